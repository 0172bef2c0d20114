#pragma once

// Resource profiles of the cryptanalytic target circuits (the logical layer)
// and the JSON catalog format they are shipped in.

#include "qcost/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qcost {

enum class CircuitKind { grover_oracle, shor_factoring, shor_ecdlp, trivial_oracle };

inline std::string_view to_string(CircuitKind k) noexcept
{
    switch (k) {
    case CircuitKind::grover_oracle: return "grover-oracle";
    case CircuitKind::shor_factoring: return "shor-factoring";
    case CircuitKind::shor_ecdlp: return "shor-ecdlp";
    case CircuitKind::trivial_oracle: return "trivial-oracle";
    }
    return "?";
}

inline std::optional<CircuitKind> parse_circuit_kind(std::string_view s) noexcept
{
    for (auto k : {CircuitKind::grover_oracle, CircuitKind::shor_factoring, CircuitKind::shor_ecdlp,
                   CircuitKind::trivial_oracle})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

inline bool is_grover_family(CircuitKind k) noexcept
{
    return k == CircuitKind::grover_oracle || k == CircuitKind::trivial_oracle;
}

inline bool is_shor_family(CircuitKind k) noexcept
{
    return k == CircuitKind::shor_factoring || k == CircuitKind::shor_ecdlp;
}

/// Resource profile of one target circuit.
///
/// Gate counts are held as doubles because several of them exceed 2^64 once
/// multiplied out; the catalog only ever stores integral values. For
/// grover-oracle entries the counts describe a single evaluation of the
/// function f, for Shor entries the whole circuit.
struct LogicalCircuitSpec {
    std::string name;
    CircuitKind kind = CircuitKind::grover_oracle;
    std::uint64_t logical_qubits = 1;
    double t_count = 0;
    double t_depth = 0;
    std::optional<double> clifford_count;
    unsigned search_space_bits = 0;
    unsigned classical_security_bits = 0;
    std::string provenance;

    bool operator==(const LogicalCircuitSpec&) const = default;
};

/// Smallest c with 2^c >= n.
constexpr unsigned ceil_log2(std::uint64_t n) noexcept
{
    unsigned c = 0;
    while (c < 64 && (std::uint64_t{1} << c) < n)
        ++c;
    return c;
}

/// Logical qubits of the factoring circuit for an n-bit modulus: 2n + 2.
inline std::uint64_t rsa_logical_qubits(std::uint64_t n)
{
    if (n < 8 || n % 2 != 0 || n > (std::uint64_t{1} << 40))
        fail(ErrorKind::precondition, "RSA modulus size must be even and >= 8, got " + std::to_string(n));
    return 2 * n + 2;
}

/// Logical qubits of the elliptic-curve discrete-log circuit over an n-bit
/// prime field: 9n + 2*ceil(log2 n) + 10.
inline std::uint64_t ecc_logical_qubits(std::uint64_t n)
{
    if (n < 8 || n > (std::uint64_t{1} << 40))
        fail(ErrorKind::precondition, "ECC field size must be >= 8, got " + std::to_string(n));
    return 9 * n + 2 * ceil_log2(n) + 10;
}

namespace detail {

// Trailing decimal digits of a scheme name, e.g. "RSA-2048" -> 2048.
inline std::optional<std::uint64_t> trailing_number(std::string_view name)
{
    auto pos = name.find_last_not_of("0123456789");
    std::string_view digits = pos == std::string_view::npos ? name : name.substr(pos + 1);
    if (digits.empty())
        return std::nullopt;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || p != digits.data() + digits.size())
        return std::nullopt;
    return v;
}

inline bool is_count(double v) { return std::isfinite(v) && v >= 0 && std::floor(v) == v; }

} // namespace detail

/// Checks every type invariant; throws Error(invariant_violation) naming the
/// entry and the rule it breaks.
inline void validate(const LogicalCircuitSpec& s)
{
    auto violated = [&](const std::string& rule) {
        fail(ErrorKind::invariant_violation, "entry '" + s.name + "': " + rule);
    };
    if (s.name.empty())
        fail(ErrorKind::invariant_violation, "entry with empty name");
    if (s.logical_qubits < 1)
        violated("logical_qubits >= 1");
    if (!detail::is_count(s.t_count) || !detail::is_count(s.t_depth))
        violated("t_count and t_depth must be non-negative integers");
    if (s.clifford_count && !detail::is_count(*s.clifford_count))
        violated("clifford_count must be a non-negative integer");
    if (s.t_depth > s.t_count)
        violated("t_depth <= t_count");

    switch (s.kind) {
    case CircuitKind::shor_factoring: {
        auto n = detail::trailing_number(s.name);
        if (!n || *n < 8 || *n % 2 != 0)
            violated("shor-factoring name must end in an even modulus size >= 8");
        if (s.logical_qubits != 2 * *n + 2)
            violated("logical_qubits = 2n + 2 (expected " + std::to_string(2 * *n + 2) + ")");
        if (s.search_space_bits != 0)
            violated("search_space_bits applies to grover kinds only");
        break;
    }
    case CircuitKind::shor_ecdlp: {
        auto n = detail::trailing_number(s.name);
        if (!n || *n < 8)
            violated("shor-ecdlp name must end in a field size >= 8");
        auto expected = 9 * *n + 2 * ceil_log2(*n) + 10;
        if (s.logical_qubits != expected)
            violated("logical_qubits = 9n + 2*ceil(log2 n) + 10 (expected " + std::to_string(expected) + ")");
        if (s.search_space_bits != 0)
            violated("search_space_bits applies to grover kinds only");
        break;
    }
    case CircuitKind::trivial_oracle:
        if (s.t_count != 0 || s.t_depth != 0)
            violated("trivial-oracle has t_count = t_depth = 0");
        [[fallthrough]];
    case CircuitKind::grover_oracle:
        if (s.search_space_bits < 1 || s.search_space_bits > 1024)
            violated("search_space_bits in [1, 1024]");
        break;
    }
}

/// Immutable, validated collection of circuit specs in file order.
class Catalog {
public:
    Catalog() = default;

    Catalog(std::vector<LogicalCircuitSpec> entries, std::string source_version)
        : entries_(std::move(entries)), source_version_(std::move(source_version))
    {
        if (entries_.empty())
            fail(ErrorKind::empty_catalog);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            validate(entries_[i]);
            for (std::size_t j = 0; j < i; ++j)
                if (entries_[j].name == entries_[i].name)
                    fail(ErrorKind::duplicate_name, entries_[i].name);
        }
    }

    const std::vector<LogicalCircuitSpec>& entries() const noexcept { return entries_; }
    const std::string& source_version() const noexcept { return source_version_; }

    const LogicalCircuitSpec* find(std::string_view name) const noexcept
    {
        auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.name == name; });
        return it == entries_.end() ? nullptr : &*it;
    }

    const LogicalCircuitSpec& at(std::string_view name) const
    {
        if (auto* e = find(name))
            return *e;
        fail(ErrorKind::unknown_scheme, std::string(name));
    }

    bool operator==(const Catalog&) const = default;

private:
    std::vector<LogicalCircuitSpec> entries_;
    std::string source_version_;
};

/// Every scheme the benchmark tables and Grover plots refer to.
inline const std::vector<std::string>& benchmark_scheme_names()
{
    static const std::vector<std::string> names{
        "AES-128",  "AES-192",  "AES-256",   "SHA-256",  "SHA3-256", "BITCOIN-POW", "TRIVIAL-56", "TRIVIAL-64",
        "TRIVIAL-128", "TRIVIAL-256", "RSA-1024", "RSA-2048", "RSA-3072", "RSA-4096", "RSA-7680", "RSA-15360",
        "P-160",    "P-192",    "P-224",     "P-256",    "P-384",    "P-521"};
    return names;
}

/// Names from benchmark_scheme_names() that `c` lacks. Small test catalogs
/// are legal, so completeness is a separate check rather than a load error.
inline std::vector<std::string> missing_benchmark_schemes(const Catalog& c)
{
    std::vector<std::string> missing;
    for (const auto& n : benchmark_scheme_names())
        if (!c.find(n))
            missing.push_back(n);
    return missing;
}

// ---------------------------------------------------------------------------
// JSON catalog format
//
//   { "source_version": "...",
//     "entries": [ { "name": ..., "kind": ..., "logical_qubits": ...,
//                    "t_count": ..., "t_depth": ..., "clifford_count": ... | null,
//                    "search_space_bits": ..., "classical_security_bits": ...,
//                    "provenance": ... }, ... ] }
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& rec, const char* key, const std::string& where)
{
    auto it = rec.find(key);
    if (it == rec.end())
        fail(ErrorKind::malformed_document, where + ": missing field '" + key + "'");
    return *it;
}

inline double number_field(const nlohmann::json& rec, const char* key, const std::string& where)
{
    const auto& v = field(rec, key, where);
    if (!v.is_number())
        fail(ErrorKind::malformed_document, where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

template <class Int>
Int integer_field(const nlohmann::json& rec, const char* key, const std::string& where)
{
    double v = number_field(rec, key, where);
    if (!is_count(v) || v > static_cast<double>(std::numeric_limits<Int>::max()))
        fail(ErrorKind::malformed_document, where + ": field '" + key + "' must be a non-negative integer");
    return static_cast<Int>(v);
}

} // namespace detail

inline LogicalCircuitSpec spec_from_json(const nlohmann::json& rec, std::size_t index)
{
    static constexpr const char* kFields[] = {"name", "kind", "logical_qubits", "t_count", "t_depth",
                                              "clifford_count", "search_space_bits",
                                              "classical_security_bits", "provenance"};
    std::string where = "entry #" + std::to_string(index);
    if (!rec.is_object())
        fail(ErrorKind::malformed_document, where + ": expected an object");
    for (const auto& [key, _] : rec.items())
        if (std::find_if(std::begin(kFields), std::end(kFields), [&](const char* f) { return key == f; }) ==
            std::end(kFields))
            fail(ErrorKind::malformed_document, where + ": unknown field '" + key + "'");

    LogicalCircuitSpec s;
    const auto& name = detail::field(rec, "name", where);
    if (!name.is_string())
        fail(ErrorKind::malformed_document, where + ": name must be a string");
    s.name = name.get<std::string>();
    where += " (" + s.name + ")";

    const auto& kind = detail::field(rec, "kind", where);
    auto parsed = kind.is_string() ? parse_circuit_kind(kind.get<std::string>()) : std::nullopt;
    if (!parsed)
        fail(ErrorKind::malformed_document, where + ": unknown kind");
    s.kind = *parsed;

    s.logical_qubits = detail::integer_field<std::uint64_t>(rec, "logical_qubits", where);
    s.t_count = detail::number_field(rec, "t_count", where);
    s.t_depth = detail::number_field(rec, "t_depth", where);
    if (auto it = rec.find("clifford_count"); it != rec.end() && !it->is_null()) {
        if (!it->is_number())
            fail(ErrorKind::malformed_document, where + ": clifford_count must be a number or null");
        s.clifford_count = it->get<double>();
    }
    s.search_space_bits = detail::integer_field<unsigned>(rec, "search_space_bits", where);
    s.classical_security_bits = detail::integer_field<unsigned>(rec, "classical_security_bits", where);
    const auto& prov = detail::field(rec, "provenance", where);
    if (!prov.is_string())
        fail(ErrorKind::malformed_document, where + ": provenance must be a string");
    s.provenance = prov.get<std::string>();
    return s;
}

inline nlohmann::json to_json(const LogicalCircuitSpec& s)
{
    nlohmann::json j;
    j["name"] = s.name;
    j["kind"] = std::string(to_string(s.kind));
    j["logical_qubits"] = s.logical_qubits;
    j["t_count"] = s.t_count;
    j["t_depth"] = s.t_depth;
    j["clifford_count"] = s.clifford_count ? nlohmann::json(*s.clifford_count) : nlohmann::json(nullptr);
    j["search_space_bits"] = s.search_space_bits;
    j["classical_security_bits"] = s.classical_security_bits;
    j["provenance"] = s.provenance;
    return j;
}

/// Parses and validates a catalog document.
inline Catalog load_catalog(std::string_view document)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::malformed_document, e.what());
    }
    if (!doc.is_object())
        fail(ErrorKind::malformed_document, "top level must be an object");
    auto ver = doc.find("source_version");
    auto ents = doc.find("entries");
    if (ver == doc.end() || !ver->is_string())
        fail(ErrorKind::malformed_document, "missing string 'source_version'");
    if (ents == doc.end() || !ents->is_array())
        fail(ErrorKind::malformed_document, "missing array 'entries'");

    std::vector<LogicalCircuitSpec> specs;
    specs.reserve(ents->size());
    for (std::size_t i = 0; i < ents->size(); ++i)
        specs.push_back(spec_from_json((*ents)[i], i));
    return Catalog(std::move(specs), ver->get<std::string>());
}

inline std::string serialize_catalog(const Catalog& c)
{
    nlohmann::json doc;
    doc["source_version"] = c.source_version();
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : c.entries())
        doc["entries"].push_back(to_json(e));
    return doc.dump(2) + "\n";
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Catalog load_catalog_file(const std::string& path) { return load_catalog(read_text_file(path)); }

} // namespace qcost
