#include "kproj/scalar.hpp"

#include <sstream>

namespace kproj {

const char* field_code(Field f) {
    switch (f) {
        case Field::Real: return "r";
        case Field::Complex: return "c";
        case Field::Quaternion: return "h";
    }
    return "?";
}

Field field_from_code(const std::string& code) {
    if (code == "r") return Field::Real;
    if (code == "c") return Field::Complex;
    if (code == "h") return Field::Quaternion;
    throw validation_error("unknown field code '" + code + "' (expected r, c or h)");
}

std::string to_string(const Scalar& x) {
    static const char* units[4] = {"", "i", "j", "k"};
    std::ostringstream os;
    const int r = real_dim(x.field);
    bool first = true;
    for (int n = 0; n < r; ++n) {
        if (x.c[n] == 0.0 && r > 1) continue;
        if (!first && x.c[n] >= 0) os << "+";
        os << x.c[n] << units[n];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace kproj
