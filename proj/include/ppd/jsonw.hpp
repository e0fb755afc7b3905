#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "ppd/natural.hpp"

namespace ppd {

// Minimal streaming JSON writer.  Keys are emitted in call order and reals
// with ten significant digits, so identical inputs give byte-identical
// output.
class JsonWriter {
  public:
    void begin_object() {
        comma();
        out_ += '{';
        fresh_ = true;
    }
    void end_object() {
        out_ += '}';
        fresh_ = false;
    }
    void begin_array() {
        comma();
        out_ += '[';
        fresh_ = true;
    }
    void end_array() {
        out_ += ']';
        fresh_ = false;
    }
    void key(std::string_view k) {
        comma();
        string_raw(k);
        out_ += ':';
        fresh_ = true;
    }
    void value(std::string_view s) {
        comma();
        string_raw(s);
        fresh_ = false;
    }
    void value(const char* s) { value(std::string_view(s)); }
    void value(bool b) {
        comma();
        out_ += b ? "true" : "false";
        fresh_ = false;
    }
    void value(u64 v) {
        comma();
        out_ += std::to_string(v);
        fresh_ = false;
    }
    void value(int v) { value(static_cast<u64>(v)); }
    void value(unsigned v) { value(static_cast<u64>(v)); }
    void value(const Nat& n) {
        comma();
        if (n >= 0 && fits_u64(n)) {
            out_ += n.str();
        } else {
            string_raw(n.str());  // exact decimal, quoted beyond 64 bits
        }
        fresh_ = false;
    }
    void value(double d) {
        comma();
        if (std::isnan(d) || std::isinf(d)) {
            out_ += "null";
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.10g", d);
            out_ += buf;
        }
        fresh_ = false;
    }
    void null() {
        comma();
        out_ += "null";
        fresh_ = false;
    }

    template <class T>
    void kv(std::string_view k, const T& v) {
        key(k);
        value(v);
    }

    const std::string& str() const { return out_; }

  private:
    void comma() {
        if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' && out_.back() != ':')
            out_ += ',';
        fresh_ = false;
    }
    void string_raw(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    bool fresh_ = true;
};

// ten significant digits, the serialization width used everywhere
inline std::string real10(double d) {
    if (std::isnan(d) || std::isinf(d)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", d);
    return buf;
}

}  // namespace ppd
