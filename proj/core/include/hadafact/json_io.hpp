#pragma once

// Deterministic JSON output and loaders for the core value types. All
// numbers are written with 17 significant digits so that re-reading a
// report reproduces the original doubles bit for bit.

#include <string>
#include <string_view>
#include <vector>

#include "hadafact/dual.hpp"
#include "hadafact/space.hpp"

namespace hadafact {

/// Streaming writer with deterministic formatting. Keys appear in
/// insertion order; doubles use "%.17g".
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(long long v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(const HVector& v);
    /// Splice a pre-serialized JSON fragment.
    JsonWriter& raw(std::string_view json);

    const std::string& str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string format_double17(double v);
std::string escape_json(std::string_view s);

std::string to_json(const HVector& v);
std::string to_json(const StarDomain& d);
std::string to_json(const DualScalar& d);
std::string to_json(const DualVector& d);

HVector hvector_from_json(std::string_view text);
StarDomain domain_from_json(std::string_view text);
DualScalar dual_scalar_from_json(std::string_view text);
DualVector dual_vector_from_json(std::string_view text);

}  // namespace hadafact
