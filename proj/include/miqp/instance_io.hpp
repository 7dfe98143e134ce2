#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "miqp/bnb.hpp"
#include "miqp/errors.hpp"

namespace miqp {

struct GenSpec {
    std::size_t n = 0;
    std::size_t n1 = 0;
    std::size_t m = 0;
    enum class Kind { A, B } kind = Kind::A;
    std::uint64_t seed = 0;
    double min_eig = 0.0;  // optional spectrum floor; 0 keeps the plain U[0,1] draw
};

struct GenMeta {
    std::uint64_t seed = 0;
    GenSpec::Kind kind = GenSpec::Kind::A;
    int retries = 0;
    // generator is always mt19937_64 with the draw order documented in generate()
};

struct GeneratedInstance {
    Instance instance;
    GenMeta meta;
};

/// Seedable uniform doubles built from raw mt19937_64 output so that streams
/// are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 eng_;
};

/// Random instance: Q = sum_i lambda_i v_i v_i' with eigenvalues U[0,1] and
/// v_i the Gram-Schmidt orthonormalization of vectors with U[-1,1] entries
/// (vectors whose orthogonal residual is below 1e-8 are redrawn); c has
/// U[-1,1] entries and d = 0. Kind A draws A and b from U[-1,1]; kind B draws
/// A from U[0,1] and sets b_i to half the i-th row sum. Draw order: the n
/// eigenvalues, then the basis vectors, then c, then A row-major, then b
/// (kind A only). A Cholesky failure on the assembled Q triggers one
/// deterministic reseed, counted in the metadata.
inline GeneratedInstance generate(const GenSpec& spec) {
    if (spec.n == 0 || spec.n1 > spec.n) throw DimensionMismatch("generate: bad dimensions");
    const std::size_t n = spec.n, m = spec.m;

    for (int attempt = 0;; ++attempt) {
        Rng rng(spec.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);

        std::vector<double> lam(n);
        for (double& v : lam) v = spec.min_eig + (1.0 - spec.min_eig) * rng.uniform01();

        std::vector<Vector> basis;
        basis.reserve(n);
        while (basis.size() < n) {
            Vector v(n);
            for (double& x : v) x = rng.uniform(-1.0, 1.0);
            for (const Vector& u : basis) {
                const double proj = dot(u, v);
                for (std::size_t j = 0; j < n; ++j) v[j] -= proj * u[j];
            }
            const double norm = std::sqrt(norm2_sq(v));
            if (norm < 1e-8) continue;  // degenerate draw, take a fresh vector
            for (double& x : v) x /= norm;
            basis.push_back(std::move(v));
        }

        Instance inst;
        inst.n = n;
        inst.n1 = spec.n1;
        inst.Q = SymMatrix(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += lam[k] * basis[k][i] * basis[k][j];
                inst.Q.set(i, j, s);
            }

        inst.c.resize(n);
        for (double& x : inst.c) x = rng.uniform(-1.0, 1.0);
        inst.d = 0.0;

        inst.A = Matrix(m, n);
        inst.b.resize(m);
        if (spec.kind == GenSpec::Kind::A) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < m; ++i) inst.b[i] = rng.uniform(-1.0, 1.0);
        } else {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = rng.uniform(0.0, 1.0);
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += inst.A(i, j);
                inst.b[i] = 0.5 * s;
            }
        }

        try {
            cholesky_spd(inst.Q);
        } catch (const NotPositiveDefinite&) {
            if (attempt >= 1) throw;
            continue;
        }
        return GeneratedInstance{std::move(inst), GenMeta{spec.seed, spec.kind, attempt}};
    }
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_instance(const std::string& path, const Instance& inst,
                           const std::optional<GenMeta>& meta = std::nullopt) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    const std::size_t m = inst.num_constraints();
    out << "miqp-instance v1\n";
    out << "n " << inst.n << "\n";
    out << "n1 " << inst.n1 << "\n";
    out << "m " << m << "\n";
    out << "d " << detail::fmt_double(inst.d) << "\n";
    out << "c\n";
    for (std::size_t j = 0; j < inst.n; ++j)
        out << detail::fmt_double(inst.c[j]) << (j + 1 < inst.n ? ' ' : '\n');
    out << "Q\n";
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = 0; j < inst.n; ++j)
            out << detail::fmt_double(inst.Q(i, j)) << (j + 1 < inst.n ? ' ' : '\n');
    out << "A\n";
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < inst.n; ++j)
            out << detail::fmt_double(inst.A(i, j)) << (j + 1 < inst.n ? ' ' : '\n');
    out << "b\n";
    for (std::size_t i = 0; i < m; ++i) out << detail::fmt_double(inst.b[i]) << (i + 1 < m ? ' ' : '\n');
    if (meta) {
        out << "meta seed " << meta->seed << "\n";
        out << "meta kind " << (meta->kind == GenSpec::Kind::A ? 'a' : 'b') << "\n";
        out << "meta rng mt19937_64\n";
        out << "meta retries " << meta->retries << "\n";
    }
    if (!out) throw ParseError("write failed: " + path);
}

namespace detail {

class InstanceReader {
public:
    explicit InstanceReader(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) fail("cannot open");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1) {
                header_ = line;
                continue;
            }
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.emplace_back(std::move(tok), lineno);
        }
    }

    Instance read() {
        expect_header();
        Instance inst;
        bool have_n = false, have_n1 = false, have_m = false, have_d = false;
        bool have_c = false, have_q = false, have_a = false, have_b = false;
        std::size_t m = 0;
        std::string key;
        while (next_key(key)) {
            if (key == "n") {
                inst.n = read_count();
                have_n = true;
            } else if (key == "n1") {
                inst.n1 = read_count();
                have_n1 = true;
            } else if (key == "m") {
                m = read_count();
                have_m = true;
            } else if (key == "d") {
                inst.d = read_number();
                have_d = true;
            } else if (key == "c") {
                require_dims(have_n, "c");
                inst.c = read_vector(inst.n);
                have_c = true;
            } else if (key == "Q") {
                require_dims(have_n, "Q");
                inst.Q = read_symmetric(inst.n);
                have_q = true;
            } else if (key == "A") {
                require_dims(have_n && have_m, "A");
                inst.A = read_matrix(m, inst.n);
                have_a = true;
            } else if (key == "b") {
                require_dims(have_m, "b");
                inst.b = read_vector(m);
                have_b = true;
            } else if (key == "meta") {
                skip_line();
            } else {
                fail("unknown field '" + key + "'");
            }
        }
        if (!(have_n && have_n1 && have_m && have_d && have_c && have_q && have_a && have_b))
            fail("missing required field");
        if (inst.n1 > inst.n) fail("n1 exceeds n");
        if (inst.n == 0) fail("n must be positive");
        return inst;
    }

private:
    void expect_header() {
        if (header_ != "miqp-instance v1") fail("bad header, expected 'miqp-instance v1'");
    }

    bool next_key(std::string& key) {
        if (pos_ >= tokens_.size()) return false;
        key = tokens_[pos_].first;
        line_ = tokens_[pos_].second;
        ++pos_;
        return true;
    }

    std::string next_token(const char* what) {
        if (pos_ >= tokens_.size()) fail(std::string("unexpected end of file, expected ") + what);
        line_ = tokens_[pos_].second;
        return tokens_[pos_++].first;
    }

    std::size_t read_count() {
        const std::string tok = next_token("a non-negative integer");
        std::size_t consumed = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &consumed);
        } catch (const std::exception&) {
            fail("expected a non-negative integer, got '" + tok + "'");
        }
        if (consumed != tok.size() || v < 0)
            fail("expected a non-negative integer, got '" + tok + "'");
        return static_cast<std::size_t>(v);
    }

    double read_number() {
        const std::string tok = next_token("a number");
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &consumed);
        } catch (const std::exception&) {
            fail("expected a number, got '" + tok + "'");
        }
        if (consumed != tok.size()) fail("expected a number, got '" + tok + "'");
        return v;
    }

    Vector read_vector(std::size_t k) {
        Vector v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = read_number();
        return v;
    }

    Matrix read_matrix(std::size_t rows, std::size_t cols) {
        Matrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = read_number();
        return a;
    }

    SymMatrix read_symmetric(std::size_t k) {
        Matrix raw = read_matrix(k, k);
        SymMatrix s(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                if (std::abs(raw(i, j) - raw(j, i)) > 1e-9) fail("Q is not symmetric");
                s.set(i, j, 0.5 * (raw(i, j) + raw(j, i)));
            }
        return s;
    }

    void require_dims(bool ok, const std::string& field) {
        if (!ok) fail("field '" + field + "' appears before its dimensions");
    }

    void skip_line() {
        const int l = line_;
        while (pos_ < tokens_.size() && tokens_[pos_].second == l) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(path_ + ":" + std::to_string(line_) + ": " + msg);
    }

    std::string path_;
    std::string header_;
    std::vector<std::pair<std::string, int>> tokens_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace detail

inline Instance read_instance(const std::string& path) {
    Instance inst = detail::InstanceReader(path).read();
    inst.validate();
    return inst;
}

/// Optional metadata block of an instance file (absent for hand-written files).
inline std::optional<GenMeta> read_instance_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    GenMeta meta;
    bool any = false;
    std::string tok;
    while (in >> tok) {
        if (tok != "meta") continue;
        std::string key;
        in >> key;
        if (key == "seed") {
            in >> meta.seed;
            any = true;
        } else if (key == "kind") {
            std::string k;
            in >> k;
            meta.kind = (k == "b") ? GenSpec::Kind::B : GenSpec::Kind::A;
            any = true;
        } else if (key == "retries") {
            in >> meta.retries;
            any = true;
        }
    }
    if (!any) return std::nullopt;
    return meta;
}

struct ResultParams {
    double tol = 1e-5;
    double time_limit = 0.0;
    double initial_ub = 1e30;
    bool warmstart = true;
    bool early_pruning = true;
};

inline const char* to_string(MiqpStatus s) {
    switch (s) {
        case MiqpStatus::Optimal: return "optimal";
        case MiqpStatus::Infeasible: return "infeasible";
        case MiqpStatus::TimeLimit: return "timelimit";
    }
    return "unknown";
}

inline void write_result(const std::string& path, const MiqpResult& res, const ResultParams& params) {
    nlohmann::json j;
    j["status"] = to_string(res.status);
    j["value"] = res.value;
    j["x"] = res.x;
    j["nodes"] = res.nodes;
    j["it_root"] = res.it_root;
    j["it_mean"] = res.it_per_node_mean;
    j["ptime"] = res.preprocess_seconds;
    j["time"] = res.solve_seconds;
    j["max_violation"] = res.max_constraint_violation;
    j["params"] = {{"tol", params.tol},
                   {"time_limit", params.time_limit},
                   {"initial_ub", params.initial_ub},
                   {"warmstart", params.warmstart},
                   {"early_pruning", params.early_pruning}};
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

/// Reindexes the variables of an instance; position i of the result is
/// variable perm[i] of the input. The permutation must keep integer variables
/// in the first n1 positions. Branching always follows index order, so this is
/// how a different branching order is selected.
inline Instance permute_variables(const Instance& inst, const std::vector<std::size_t>& perm) {
    if (perm.size() != inst.n) throw DimensionMismatch("permute: wrong length");
    std::vector<bool> seen(inst.n, false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= inst.n || seen[perm[i]]) throw DimensionMismatch("permute: not a permutation");
        if ((i < inst.n1) != (perm[i] < inst.n1))
            throw DimensionMismatch("permute: mixes integer and continuous positions");
        seen[perm[i]] = true;
    }
    Instance out;
    out.n = inst.n;
    out.n1 = inst.n1;
    out.d = inst.d;
    out.Q = SymMatrix(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i; j < inst.n; ++j) out.Q.set(i, j, inst.Q(perm[i], perm[j]));
    out.c.resize(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) out.c[i] = inst.c[perm[i]];
    out.A = Matrix(inst.num_constraints(), inst.n);
    for (std::size_t r = 0; r < inst.num_constraints(); ++r)
        for (std::size_t i = 0; i < inst.n; ++i) out.A(r, i) = inst.A(r, perm[i]);
    out.b = inst.b;
    return out;
}

}  // namespace miqp
