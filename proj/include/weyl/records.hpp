#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weyl/expr_io.hpp"
#include "weyl/factorization.hpp"

namespace weyl
{

// Record files share one JSON shape, {schema, dim, trunc, payload}, with
// every scalar and element stored as an exact expression string.
namespace schema
{
inline constexpr const char *kElement = "weyl-element/1";
inline constexpr const char *kMatrix = "symp-matrix/1";
inline constexpr const char *kAutomorphism = "automorphism/1";
inline constexpr const char *kFactorization = "factorization/1";
} // namespace schema

using Json = nlohmann::json;

inline std::string variable_name(const Context &ctx, int k)
{
    return (ctx.is_position(k) ? "x" : "p") + std::to_string((ctx.is_position(k) ? k : k - ctx.dim()) + 1);
}

namespace detail
{

inline Json envelope(const char *name, const Context &ctx, Json payload)
{
    return Json{{"schema", name}, {"dim", ctx.dim()}, {"trunc", ctx.trunc()}, {"payload", std::move(payload)}};
}

inline Context open_envelope(const Json &j, const char *name)
{
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
        throw FormatError("record has no schema field");
    }
    if (j["schema"].get<std::string>() != name) {
        throw FormatError("expected schema " + std::string(name) + ", found " + j["schema"].get<std::string>());
    }
    for (const char *f : {"dim", "trunc"}) {
        if (!j.contains(f) || !j[f].is_number_integer()) {
            throw FormatError(std::string("record field '") + f + "' must be an integer");
        }
    }
    if (!j.contains("payload") || !j["payload"].is_object()) {
        throw FormatError("record has no payload object");
    }
    return Context(j["dim"].get<int>(), j["trunc"].get<int>());
}

inline const Json &field(const Json &obj, const char *name)
{
    if (!obj.contains(name)) {
        throw FormatError(std::string("missing field '") + name + "'");
    }
    return obj[name];
}

inline std::string string_field(const Json &obj, const char *name)
{
    const Json &v = field(obj, name);
    if (!v.is_string()) {
        throw FormatError(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

inline Json matrix_rows(const SympMatrix &m)
{
    Json rows = Json::array();
    const int n = 2 * m.dim();
    for (int r = 0; r < n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < n; ++c) {
            row.push_back(m(r, c).to_string());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline SympMatrix matrix_from_rows(const Json &rows, int dim)
{
    const int n = 2 * dim;
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        throw FormatError("matrix must have 2d rows");
    }
    std::vector<GaussianRational> entries;
    for (const auto &row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw FormatError("matrix rows must have 2d entries");
        }
        for (const auto &e : row) {
            if (!e.is_string()) {
                throw FormatError("matrix entries must be scalar strings");
            }
            entries.push_back(parse_scalar(e.get<std::string>()));
        }
    }
    return SympMatrix(dim, Matrix(n, std::move(entries)));
}

inline Json residual_json(const ResidualReport &rep, const Context &ctx)
{
    Json gens = Json::array();
    for (const auto &g : rep.generators) {
        gens.push_back({{"index", g.index}, {"variable", variable_name(ctx, g.index)}, {"max_grade", g.max_grade}, {"pass", g.pass}});
    }
    Json first = nullptr;
    if (rep.first_mismatch) {
        const Mismatch &mm = *rep.first_mismatch;
        first = {{"generator", variable_name(ctx, mm.generator)},
                 {"grade", mm.grade},
                 {"monomial", print(WeylElement::monomial(ctx, mm.monomial))},
                 {"expected", mm.expected.to_string()},
                 {"actual", mm.actual.to_string()}};
    }
    return {{"pass", rep.pass}, {"generators", std::move(gens)}, {"first_mismatch", std::move(first)}};
}

} // namespace detail

inline Json element_record(const WeylElement &e)
{
    return detail::envelope(schema::kElement, e.context(), {{"expr", print(e)}});
}

inline WeylElement element_from_record(const Json &j)
{
    const Context ctx = detail::open_envelope(j, schema::kElement);
    return parse(detail::string_field(j["payload"], "expr"), ctx);
}

inline Json matrix_record(const SympMatrix &m, const Context &ctx)
{
    return detail::envelope(schema::kMatrix, ctx, {{"rows", detail::matrix_rows(m)}});
}

inline SympMatrix matrix_from_record(const Json &j)
{
    const Context ctx = detail::open_envelope(j, schema::kMatrix);
    return detail::matrix_from_rows(detail::field(j["payload"], "rows"), ctx.dim());
}

inline Json automorphism_record(const AutomorphismData &phi)
{
    Json images = Json::array();
    for (const auto &g : phi.images()) {
        images.push_back(print(g));
    }
    return detail::envelope(schema::kAutomorphism, phi.context(),
                            {{"hbar_scale", phi.hbar_scale().to_string()}, {"images", std::move(images)}});
}

inline AutomorphismData automorphism_from_record(const Json &j)
{
    const Context ctx = detail::open_envelope(j, schema::kAutomorphism);
    const Json &p = j["payload"];
    const Json &imgs = detail::field(p, "images");
    if (!imgs.is_array() || static_cast<int>(imgs.size()) != ctx.nvars()) {
        throw FormatError("automorphism needs 2d image strings");
    }
    std::vector<WeylElement> images;
    for (const auto &s : imgs) {
        if (!s.is_string()) {
            throw FormatError("images must be expression strings");
        }
        images.push_back(parse(s.get<std::string>(), ctx));
    }
    GaussianRational c = 1;
    if (p.contains("hbar_scale")) {
        c = parse_scalar(detail::string_field(p, "hbar_scale"));
    }
    if (c.is_zero()) {
        throw FormatError("hbar_scale must be nonzero");
    }
    return AutomorphismData(ctx, std::move(images), std::move(c));
}

inline Json factorization_record(const FactorizationResult &r, const Context &ctx)
{
    return detail::envelope(schema::kFactorization, ctx,
                            {{"matrix", detail::matrix_rows(r.matrix)},
                             {"generator", print(r.generator)},
                             {"generator_trunc", r.generator.context().trunc()},
                             {"residual", detail::residual_json(r.residual, ctx)}});
}

// Matrix and generator of a factorization record; the residual report is
// recomputed by callers that need it.
inline std::pair<SympMatrix, WeylElement> factorization_from_record(const Json &j)
{
    const Context ctx = detail::open_envelope(j, schema::kFactorization);
    const Json &p = j["payload"];
    SympMatrix m = detail::matrix_from_rows(detail::field(p, "matrix"), ctx.dim());
    int gtrunc = ctx.trunc() + 1;
    if (p.contains("generator_trunc")) {
        if (!p["generator_trunc"].is_number_integer()) {
            throw FormatError("generator_trunc must be an integer");
        }
        gtrunc = p["generator_trunc"].get<int>();
    }
    WeylElement s = parse(detail::string_field(p, "generator"), ctx.with_trunc(gtrunc));
    return {std::move(m), std::move(s)};
}

// Pretty-printed, newline-terminated; key order is fixed so output is
// byte-reproducible.
inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

inline Json load_json(const std::string &text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace weyl
