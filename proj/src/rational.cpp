#include "smf/rational.hpp"

#include "smf/errors.hpp"

namespace smf {

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) {
        fail(ErrorKind::MalformedInput, "rational", "empty rational string");
    }
    for (char c : text) {
        const bool ok = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '/';
        if (!ok) {
            fail(ErrorKind::MalformedInput, "rational",
                 "invalid character in rational string: '" + text + "'");
        }
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        fail(ErrorKind::MalformedInput, "rational",
             "unparsable rational string: '" + text + "'");
    }
    if (sgn(q.get_den()) == 0) {
        fail(ErrorKind::MalformedInput, "rational",
             "zero denominator in rational string: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

}  // namespace smf
