#include "hadafact/json_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace hadafact {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string escape_json(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!need_comma_.empty()) {
        if (need_comma_.back()) out_ += ',';
        need_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    separator();
    out_ += '"';
    out_ += escape_json(k);
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double17(v);
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    separator();
    out_ += '"';
    out_ += escape_json(s);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(const HVector& v) {
    begin_array();
    for (double c : v.coeffs()) value(c);
    return end_array();
}

JsonWriter& JsonWriter::raw(std::string_view json) {
    separator();
    out_ += json;
    return *this;
}

std::string to_json(const HVector& v) {
    JsonWriter w;
    w.value(v);
    return w.str();
}

std::string to_json(const StarDomain& d) {
    JsonWriter w;
    w.begin_object();
    if (d.is_whole_space()) {
        w.key("kind").value("whole");
    } else {
        const Ball* b = d.as_ball();
        w.key("kind").value("ball");
        w.key("center").value(b->center);
        w.key("radius").value(b->radius);
    }
    w.end_object();
    return w.str();
}

std::string to_json(const DualScalar& d) {
    JsonWriter w;
    w.begin_object();
    w.key("re").value(d.re);
    w.key("eps").value(d.eps);
    w.end_object();
    return w.str();
}

std::string to_json(const DualVector& d) {
    JsonWriter w;
    w.begin_object();
    w.key("point").value(d.point);
    w.key("tangent").value(d.tangent);
    w.end_object();
    return w.str();
}

namespace {

nlohmann::json parse_json(std::string_view text, const char* what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string("malformed JSON for ") + what);
    return j;
}

HVector hvector_from(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be a JSON array");
    std::vector<double> c;
    c.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw std::invalid_argument(std::string(what) + " must be numeric");
        c.push_back(e.get<double>());
    }
    return HVector(std::move(c));
}

}  // namespace

HVector hvector_from_json(std::string_view text) {
    return hvector_from(parse_json(text, "vector"), "vector");
}

StarDomain domain_from_json(std::string_view text) {
    nlohmann::json j = parse_json(text, "domain");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "whole") return StarDomain::whole_space();
    if (kind == "ball")
        return StarDomain::ball(hvector_from(j.at("center"), "center"),
                                j.at("radius").get<double>());
    throw std::invalid_argument("unknown domain kind '" + kind + "'");
}

DualScalar dual_scalar_from_json(std::string_view text) {
    nlohmann::json j = parse_json(text, "dual scalar");
    return DualScalar(j.at("re").get<double>(), j.at("eps").get<double>());
}

DualVector dual_vector_from_json(std::string_view text) {
    nlohmann::json j = parse_json(text, "dual vector");
    return DualVector{hvector_from(j.at("point"), "point"),
                      hvector_from(j.at("tangent"), "tangent")};
}

}  // namespace hadafact
