#include "hv/spec.hpp"

#include <cmath>
#include <map>

#include "hv/errors.hpp"

namespace hv {

using nlohmann::json;
using nlohmann::ordered_json;

static cplx parse_cplx(const json& j, const char* what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw invalid_spec(std::string(what) + " must be a number or [re, im]");
}

static json cplx_json(cplx c) {
    if (c.imag() == 0.0) return json(c.real());
    return json::array({c.real(), c.imag()});
}

static std::string canonical_kind(std::string k) {
    if (k == "neg_log") return "neg_log_one_minus_z";
    if (k == "outer3") return "outer_three_minus_log";
    return k;
}

FunctionSpec FunctionSpec::parse(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw invalid_spec("function spec must be an object with a \"kind\" string");
    FunctionSpec s;
    s.kind = canonical_kind(j["kind"].get<std::string>());
    const std::string& k = s.kind;
    if (k == "monomial") {
        if (!j.contains("n")) throw invalid_spec("monomial needs \"n\"");
        s.n = j["n"].get<long>();
    } else if (k == "neg_log_one_minus_z") {
        s.a = j.contains("lambda") ? parse_cplx(j["lambda"], "lambda") : cplx(1.0);
    } else if (k == "neg_log_over_z" || k == "singular_inner" || k == "outer_three_minus_log") {
        // no parameters
    } else if (k == "binomial_power") {
        if (!j.contains("alpha")) throw invalid_spec("binomial_power needs \"alpha\"");
        s.alpha = j["alpha"].get<double>();
    } else if (k == "shifted_binomial_power") {
        if (!j.contains("alpha") || !j.contains("a"))
            throw invalid_spec("shifted_binomial_power needs \"alpha\" and \"a\"");
        s.alpha = j["alpha"].get<double>();
        s.a = parse_cplx(j["a"], "a");
    } else if (k == "blaschke_factor") {
        if (!j.contains("a")) throw invalid_spec("blaschke_factor needs \"a\"");
        s.a = parse_cplx(j["a"], "a");
    } else if (k == "product") {
        if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
            throw invalid_spec("product needs a nonempty \"factors\" array");
        for (const auto& f : j["factors"]) s.bases.push_back(parse(f));
    } else if (k == "power") {
        if (!j.contains("base") || !j.contains("alpha"))
            throw invalid_spec("power needs \"base\" and \"alpha\"");
        s.bases.push_back(parse(j["base"]));
        s.alpha = j["alpha"].get<double>();
    } else if (k == "reciprocal" || k == "exp" || k == "log") {
        if (!j.contains("base")) throw invalid_spec(k + " needs \"base\"");
        s.bases.push_back(parse(j["base"]));
    } else if (k == "linear_combo") {
        if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
            throw invalid_spec("linear_combo needs a nonempty \"terms\" array");
        for (const auto& t : j["terms"]) {
            if (!t.is_object() || !t.contains("coef") || !t.contains("spec"))
                throw invalid_spec("linear_combo terms need \"coef\" and \"spec\"");
            s.terms.emplace_back(parse_cplx(t["coef"], "coef"), parse(t["spec"]));
        }
    } else {
        throw invalid_spec("unknown function kind: " + k);
    }
    s.validate();
    return s;
}

FunctionSpec FunctionSpec::parse_string(const std::string& text) {
    std::size_t i = text.find_first_not_of(" \t\n");
    if (i != std::string::npos && text[i] == '{') {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw invalid_spec("function spec is not valid JSON");
        return parse(j);
    }
    return catalog_spec(text);
}

ordered_json FunctionSpec::to_json() const {
    ordered_json j;
    j["kind"] = kind;
    if (kind == "monomial") j["n"] = n;
    if (kind == "neg_log_one_minus_z" && a != cplx(1.0)) j["lambda"] = cplx_json(a);
    if (kind == "binomial_power" || kind == "power") j["alpha"] = alpha;
    if (kind == "shifted_binomial_power") {
        j["alpha"] = alpha;
        j["a"] = cplx_json(a);
    }
    if (kind == "blaschke_factor") j["a"] = cplx_json(a);
    if (kind == "product") {
        ordered_json arr = ordered_json::array();
        for (const auto& b : bases) arr.push_back(b.to_json());
        j["factors"] = arr;
    }
    if (kind == "power" || kind == "reciprocal" || kind == "exp" || kind == "log")
        j["base"] = bases.at(0).to_json();
    if (kind == "linear_combo") {
        ordered_json arr = ordered_json::array();
        for (const auto& [c, sp] : terms) {
            ordered_json t;
            t["coef"] = cplx_json(c);
            t["spec"] = sp.to_json();
            arr.push_back(t);
        }
        j["terms"] = arr;
    }
    return j;
}

void FunctionSpec::validate() const {
    if (kind == "monomial" && n < 0) throw invalid_spec("monomial degree must be >= 0");
    if (kind == "neg_log_one_minus_z" && std::abs(a) > 1.0 + 1e-15)
        throw invalid_spec("neg_log rate needs |lambda| <= 1");
    if (kind == "shifted_binomial_power" && std::abs(a) < 1.0 - 1e-15)
        throw invalid_spec("shifted_binomial_power needs |a| >= 1");
    if (kind == "blaschke_factor" && std::abs(a) >= 1.0)
        throw invalid_spec("blaschke_factor needs |a| < 1");
    for (const auto& b : bases) b.validate();
    for (const auto& [c, sp] : terms) sp.validate();
}

// light zero/branch check at an interior radius; power and log additionally
// require samples away from the negative real axis (principal domain)
static void assert_disk_values(const TaylorSeries& base, bool principal, const std::string& what) {
    std::size_t M = next_pow2(std::max<std::size_t>(64, 2 * (base.order() + 1)));
    std::vector<cplx> v = evaluate_on_circle(base, 0.9, M);
    double mx = 0;
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
    for (const auto& x : v) {
        if (std::abs(x) < 1e-12 * (1.0 + mx))
            throw invalid_spec(what + ": argument vanishes inside the disk (sampled)");
        if (principal && x.real() < 0 && std::abs(x.imag()) < 1e-12 * (1.0 + mx))
            throw invalid_spec(what + ": argument crosses the branch cut (sampled)");
    }
}

// |a_k| <= |a_N| (k/N)^{-(alpha+1)} e^{|alpha+1|/N} for k >= N (ratio bound),
// with C raised to cover the stored range
static TailHint binomial_hint(const std::vector<cplx>& c, double alpha) {
    if (alpha >= 0 && alpha == std::floor(alpha) && double(c.size() - 1) >= alpha)
        return TailHint::exact();
    std::size_t N = c.size() - 1;
    if (N == 0) return TailHint::power(1.0 + std::abs(alpha), 0, true);
    double beta = alpha + 1;
    double m = -beta;
    double C = std::abs(c[N]) * std::pow(double(N), beta) * std::exp(std::abs(beta) / double(N));
    for (std::size_t k = 1; k <= N; ++k) {
        double b = std::pow(double(k), m);
        if (b > 0) C = std::max(C, std::abs(c[k]) / b);
    }
    return TailHint::power(C * (1 + 1e-9), m, false);
}

static std::vector<cplx> binomial_coeffs(double alpha, cplx a, std::size_t order) {
    std::vector<cplx> c(order + 1, cplx(0));
    c[0] = 1.0;
    for (std::size_t k = 0; k < order; ++k)
        c[k + 1] = c[k] * (double(k) - alpha) / ((double(k) + 1.0) * a);
    return c;
}

TaylorSeries realize(const FunctionSpec& spec, std::size_t order) {
    if (order > MAX_ORDER) throw order_overflow("requested order exceeds the configured maximum");
    spec.validate();
    const std::string& k = spec.kind;

    if (k == "monomial") {
        std::vector<cplx> c(order + 1, cplx(0));
        if (std::size_t(spec.n) <= order) {
            c[spec.n] = 1.0;
            return TaylorSeries(std::move(c), TailHint::exact());
        }
        return TaylorSeries(std::move(c), TailHint::power(1.0, 0, false));
    }
    if (k == "neg_log_one_minus_z") {
        std::vector<cplx> c(order + 1, cplx(0));
        cplx lk = 1.0;
        for (std::size_t j = 1; j <= order; ++j) {
            lk *= spec.a;
            c[j] = lk / double(j);
        }
        double la = std::abs(spec.a);
        if (la == 0.0) return TaylorSeries(std::move(c), TailHint::exact());
        TailHint h = la >= 1.0 - 1e-15 ? TailHint::power(1.0, -1.0, false)
                                       : TailHint::geo(1.0, 1.0 / la, false);
        return TaylorSeries(std::move(c), h);
    }
    if (k == "neg_log_over_z") {
        std::vector<cplx> c(order + 1, cplx(0));
        for (std::size_t j = 0; j <= order; ++j) c[j] = 1.0 / double(j + 1);
        return TaylorSeries(std::move(c), TailHint::power(1.0, -1.0, false));
    }
    if (k == "binomial_power") {
        std::vector<cplx> c = binomial_coeffs(spec.alpha, cplx(1.0), order);
        TailHint h = binomial_hint(c, spec.alpha);
        return TaylorSeries(std::move(c), h);
    }
    if (k == "shifted_binomial_power") {
        std::vector<cplx> c = binomial_coeffs(spec.alpha, spec.a, order);
        if (std::abs(std::abs(spec.a) - 1.0) < 1e-15) {
            TailHint h = binomial_hint(c, spec.alpha);
            return TaylorSeries(std::move(c), h);
        }
        return TaylorSeries(std::move(c));
    }
    if (k == "singular_inner") {
        // (z-1)^2 S' = -2 S  =>  (n+1) s_{n+1} = (2n-2) s_n - (n-1) s_{n-1}
        std::vector<cplx> s(order + 1, cplx(0));
        s[0] = std::exp(-1.0);
        if (order >= 1) s[1] = -2.0 * s[0];
        for (std::size_t m = 1; m < order; ++m) {
            double n = double(m);
            s[m + 1] = ((2 * n - 2) * s[m] - (n - 1) * s[m - 1]) / (n + 1);
        }
        return TaylorSeries(std::move(s));
    }
    if (k == "blaschke_factor") {
        // phi_a = a - (1-|a|^2) sum_{j>=1} conj(a)^{j-1} z^j
        std::vector<cplx> c(order + 1, cplx(0));
        c[0] = spec.a;
        double q = 1.0 - std::norm(spec.a);
        cplx ab = std::conj(spec.a), p = 1.0;
        for (std::size_t j = 1; j <= order; ++j) {
            c[j] = -q * p;
            p *= ab;
        }
        double la = std::abs(spec.a);
        if (la == 0.0)
            return TaylorSeries(std::move(c), order >= 1 ? TailHint::exact()
                                                         : TailHint::power(1.0, 0, false));
        return TaylorSeries(std::move(c),
                            TailHint::geo(q / la * (1 + 1e-12), 1.0 / la, false));
    }
    if (k == "outer_three_minus_log") {
        // 1 / (3 - log(1-z)) = reciprocal of 3 + sum z^j / j
        std::vector<cplx> den(order + 1, cplx(0));
        den[0] = 3.0;
        for (std::size_t j = 1; j <= order; ++j) den[j] = 1.0 / double(j);
        return reciprocal(TaylorSeries(std::move(den), TailHint::power(3.0, 0, false)), order);
    }
    if (k == "product") {
        TaylorSeries acc = realize(spec.bases[0], order);
        for (std::size_t i = 1; i < spec.bases.size(); ++i)
            acc = cauchy_product(acc, realize(spec.bases[i], order), order);
        return acc;
    }
    if (k == "power") {
        TaylorSeries base = realize(spec.bases[0], order);
        if (std::abs(base.a[0]) == 0.0)
            throw invalid_spec("power of a series vanishing at 0");
        assert_disk_values(base, true, "power");
        return series_pow(base, spec.alpha, order);
    }
    if (k == "reciprocal") {
        TaylorSeries base = realize(spec.bases[0], order);
        if (std::abs(base.a[0]) == 0.0)
            throw invalid_spec("reciprocal of a series vanishing at 0");
        assert_disk_values(base, false, "reciprocal");
        return reciprocal(base, order);
    }
    if (k == "exp") {
        TaylorSeries base = realize(spec.bases[0], order);
        return series_exp(base, order);
    }
    if (k == "log") {
        TaylorSeries base = realize(spec.bases[0], order);
        if (std::abs(base.a[0]) == 0.0) throw invalid_spec("log of a series vanishing at 0");
        assert_disk_values(base, true, "log");
        return series_log(base, order);
    }
    if (k == "linear_combo") {
        std::vector<TaylorSeries> parts;
        parts.reserve(spec.terms.size());
        for (const auto& [c, sp] : spec.terms) parts.push_back(realize(sp, order));
        std::vector<std::pair<cplx, const TaylorSeries*>> refs;
        for (std::size_t i = 0; i < parts.size(); ++i)
            refs.emplace_back(spec.terms[i].first, &parts[i]);
        return linear_combine(refs, order);
    }
    throw invalid_spec("unknown function kind: " + k);
}

static std::map<std::string, FunctionSpec> build_catalog() {
    auto mono = [](long n) {
        FunctionSpec s;
        s.kind = "monomial";
        s.n = n;
        return s;
    };
    auto plain = [](const char* kind) {
        FunctionSpec s;
        s.kind = kind;
        return s;
    };
    auto neg_log = [&](cplx lam) {
        FunctionSpec s;
        s.kind = "neg_log_one_minus_z";
        s.a = lam;
        return s;
    };
    auto binom = [](double alpha) {
        FunctionSpec s;
        s.kind = "binomial_power";
        s.alpha = alpha;
        return s;
    };
    auto shifted = [](double alpha, cplx a) {
        FunctionSpec s;
        s.kind = "shifted_binomial_power";
        s.alpha = alpha;
        s.a = a;
        return s;
    };
    auto blaschke = [](cplx a) {
        FunctionSpec s;
        s.kind = "blaschke_factor";
        s.a = a;
        return s;
    };
    auto combo = [](std::vector<std::pair<cplx, FunctionSpec>> ts) {
        FunctionSpec s;
        s.kind = "linear_combo";
        s.terms = std::move(ts);
        return s;
    };

    std::map<std::string, FunctionSpec> c;
    c["unit"] = mono(0);
    c["z"] = mono(1);
    c["z5"] = mono(5);
    c["neg_log"] = neg_log(1.0);
    c["neg_log_over_z"] = plain("neg_log_over_z");
    c["binom_m025"] = binom(-0.25);
    c["binom_m045"] = binom(-0.45);
    c["binom_m050"] = binom(-0.5);
    c["binom_m125"] = binom(-1.25);
    c["binom_p050"] = binom(0.5);
    c["plus_m025"] = shifted(-0.25, -1.0);
    c["plus_m125"] = shifted(-1.25, -1.0);
    c["singular_inner"] = plain("singular_inner");
    {
        FunctionSpec s;
        s.kind = "reciprocal";
        s.bases.push_back(plain("singular_inner"));
        c["inv_singular_inner"] = s;
    }
    c["outer3"] = plain("outer_three_minus_log");
    c["inv_outer3"] = combo({{3.0, mono(0)}, {1.0, neg_log(1.0)}});
    c["blaschke_half"] = blaschke(0.5);
    c["blaschke_cplx"] = blaschke(cplx(-0.3, 0.4));
    c["k_symbol"] = combo({{0.5, neg_log(1.0)}, {-0.5, neg_log(-1.0)}});
    c["one_plus_z_half"] = combo({{0.5, mono(0)}, {0.5, mono(1)}});
    {
        FunctionSpec pw;
        pw.kind = "power";
        pw.bases.push_back(plain("neg_log_over_z"));
        pw.alpha = 0.75;
        FunctionSpec s;
        s.kind = "product";
        s.bases.push_back(binom(-0.5));
        s.bases.push_back(pw);
        c["witness_log_power"] = s;
    }
    return c;
}

static const std::map<std::string, FunctionSpec>& catalog() {
    static const std::map<std::string, FunctionSpec> c = build_catalog();
    return c;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, s] : catalog()) v.push_back(k);
        return v;
    }();
    return names;
}

FunctionSpec catalog_spec(const std::string& name) {
    auto it = catalog().find(name);
    if (it == catalog().end()) throw invalid_spec("unknown catalog function: " + name);
    return it->second;
}

} // namespace hv
