#include "commands.hpp"

#include "permoments/largedev.hpp"
#include "permoments/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace pm::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Human, Json, Csv };

struct Context {
    Format format = Format::Human;
    unsigned threads = 1;
    bool force = false;
    std::string output;
    MomentBudget budget;
    PsiGuard guard;

    void apply()
    {
        budget.threads = std::max(1u, threads);
        budget.force = force;
        if (force) {
            guard.max_cells = 1000;
            guard.max_depth = 1000;
            guard.max_states = std::numeric_limits<std::size_t>::max();
        }
    }
};

std::string ratio15(const Rational& q)
{
    return fixed_significant(q, 15);
}

std::string num12(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string factored(const Int& v)
{
    if (v == 0 || v == 1)
        return v.str();
    Int rest = v < 0 ? Int(-v) : v;
    std::vector<std::string> pieces;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        unsigned e = 0;
        for (; rest % p == 0; ++e)
            rest /= p;
        if (e)
            pieces.push_back(std::to_string(p) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    if (rest != 1)
        pieces.push_back(rest.str());
    std::string text = v < 0 ? "-" : "";
    for (std::size_t i = 0; i < pieces.size(); ++i)
        text += (i ? " " : "") + pieces[i];
    return text;
}

void csv_row(std::ostream& out, std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto& c : cells) {
        if (!first)
            out << ',';
        out << c;
        first = false;
    }
    out << '\n';
}

Partition parse_shape(const std::vector<unsigned>& parts)
{
    std::vector<unsigned> p;
    for (unsigned v : parts)
        if (v)
            p.push_back(v);
    return Partition(std::move(p));
}

// moments

std::vector<unsigned> t_range(std::optional<unsigned> t, std::optional<unsigned> t_max)
{
    if (!t && !t_max)
        throw DomainError("moments: give --t or --t-max");
    if (!t_max)
        return {*t};
    unsigned from = t ? *t : 1;
    if (from > *t_max)
        throw DomainError("moments: --t must not exceed --t-max");
    std::vector<unsigned> ts;
    for (unsigned v = from; v <= *t_max; ++v)
        ts.push_back(v);
    return ts;
}

json bound_json(const NamedBound& b, const std::optional<Rational>& normalizer)
{
    json j = {{"name", b.name}, {"value", to_string(b.value)}};
    if (normalizer)
        j["ratio"] = ratio15(b.value / *normalizer);
    else
        j["decimal"] = ratio15(b.value);
    return j;
}

void moments_gaussian(Context& ctx, unsigned k, std::vector<unsigned> ts, MomentMethod method, std::ostream& out)
{
    std::vector<MomentReport> reports;
    for (unsigned t : ts)
        reports.push_back(gaussian_moment_exact(k, t, method, ctx.budget));

    switch (ctx.format) {
    case Format::Json: {
        json rows = json::array();
        for (const auto& r : reports) {
            Rational norm = gaussian_normalizer(r.k, r.t);
            json j = {{"ensemble", to_string(r.ensemble)}, {"k", r.k}, {"t", r.t}, {"value", to_string(r.value)},
                      {"ratio", ratio15(*r.normalized_ratio)}, {"method", r.method}};
            j["bounds"] = json::array();
            for (const auto& b : r.bounds)
                j["bounds"].push_back(bound_json(b, norm));
            rows.push_back(std::move(j));
        }
        out << (rows.size() == 1 ? rows[0] : rows).dump(2) << '\n';
        break;
    }
    case Format::Csv:
        csv_row(out, {"k", "t", "value", "ratio", "method"});
        for (const auto& r : reports)
            csv_row(out, {std::to_string(r.k), std::to_string(r.t), to_string(r.value), ratio15(*r.normalized_ratio),
                          r.method});
        break;
    case Format::Human:
        if (reports.size() == 1) {
            const auto& r = reports[0];
            Rational norm = gaussian_normalizer(r.k, r.t);
            out << to_string(r.value) << '\n';
            out << "ratio " << ratio15(*r.normalized_ratio) << '\n';
            out << "method " << r.method << '\n';
            for (const auto& b : r.bounds)
                out << "bound " << b.name << " ratio " << ratio15(b.value / norm) << '\n';
        } else {
            for (const auto& r : reports)
                out << "t=" << r.t << ' ' << to_string(r.value) << " ratio " << ratio15(*r.normalized_ratio) << ' '
                    << r.method << '\n';
        }
        break;
    }
}

void moments_unitary(Context& ctx, unsigned d, unsigned k, unsigned t, std::ostream& out)
{
    MomentReport r = unitary_minor_moment(d, k, t, ctx.guard);
    switch (ctx.format) {
    case Format::Json: {
        json j = {{"ensemble", to_string(r.ensemble)}, {"d", d}, {"k", k}, {"t", t}, {"value", to_string(r.value)},
                  {"decimal", ratio15(r.value)}, {"method", r.method}};
        j["bounds"] = json::array();
        for (const auto& b : r.bounds)
            j["bounds"].push_back(bound_json(b, std::nullopt));
        out << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        csv_row(out, {"d", "k", "t", "value", "decimal", "method"});
        csv_row(out, {std::to_string(d), std::to_string(k), std::to_string(t), to_string(r.value), ratio15(r.value),
                      r.method});
        break;
    case Format::Human:
        out << to_string(r.value) << '\n';
        out << "decimal " << ratio15(r.value) << '\n';
        out << "method " << r.method << '\n';
        for (const auto& b : r.bounds)
            out << "bound " << b.name << ' ' << to_string(b.value) << '\n';
        break;
    }
}

void emit_single(Context& ctx, std::ostream& out, json header, const std::vector<std::string>& csv_keys,
                 const std::string& value)
{
    switch (ctx.format) {
    case Format::Json:
        header["value"] = value;
        out << header.dump(2) << '\n';
        break;
    case Format::Csv: {
        std::string head, row;
        for (const auto& key : csv_keys) {
            head += key + ',';
            row += header[key].dump() + ',';
        }
        out << head << "value\n" << row << value << '\n';
        break;
    }
    case Format::Human:
        out << value << '\n';
        break;
    }
}

void moments_divergence(Context& ctx, unsigned k, unsigned t, std::ostream& out)
{
    DivergenceReport r = magic_square_divergence(k, t, ctx.budget);
    switch (ctx.format) {
    case Format::Json:
        out << json{{"k", k},
                    {"t", t},
                    {"sum_p1", to_string(r.sum_p1)},
                    {"sum_p2", to_string(r.sum_p2)},
                    {"divergence_sum", to_string(r.divergence_sum)},
                    {"ratio", ratio15(r.divergence_sum)}}
                       .dump(2)
            << '\n';
        break;
    case Format::Csv:
        csv_row(out, {"k", "t", "sum_p1", "sum_p2", "divergence_sum", "ratio"});
        csv_row(out, {std::to_string(k), std::to_string(t), to_string(r.sum_p1), to_string(r.sum_p2),
                      to_string(r.divergence_sum), ratio15(r.divergence_sum)});
        break;
    case Format::Human:
        out << to_string(r.divergence_sum) << '\n';
        out << "ratio " << ratio15(r.divergence_sum) << '\n';
        out << "sum_p1 " << to_string(r.sum_p1) << '\n';
        out << "sum_p2 " << to_string(r.sum_p2) << '\n';
        break;
    }
}

// bounds

void bounds_gaussian(Context& ctx, unsigned k, unsigned t, std::ostream& out)
{
    if (k == 0)
        throw DomainError("bounds gaussian: k must be positive");
    Rational norm = gaussian_normalizer(k, t);
    std::vector<NamedBound> bounds{{"determinant", Rational(det_moment_gaussian(k, t))}};
    if (k >= 3 && t >= 3) {
        bounds.push_back({"four-term", gaussian_moment_lower_bound(k, t, BoundDepth::FourTerm)});
        bounds.push_back({"deep", gaussian_moment_lower_bound(k, t, BoundDepth::Deep)});
    }
    if (k >= 4 && t >= 4)
        bounds.push_back({"thirteen-eighths", gaussian_moment_lower_bound(k, t, BoundDepth::ThirteenEighths)});

    switch (ctx.format) {
    case Format::Json: {
        json j = {{"ensemble", "gaussian"}, {"k", k}, {"t", t}, {"normalizer", to_string(norm)}};
        j["bounds"] = json::array();
        for (const auto& b : bounds)
            j["bounds"].push_back(bound_json(b, norm));
        out << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        csv_row(out, {"name", "value", "ratio"});
        for (const auto& b : bounds)
            csv_row(out, {b.name, to_string(b.value), ratio15(b.value / norm)});
        break;
    case Format::Human:
        for (const auto& b : bounds)
            out << b.name << " ratio " << ratio15(b.value / norm) << '\n';
        break;
    }
}

void bounds_unitary(Context& ctx, unsigned d, unsigned k, unsigned t, std::ostream& out)
{
    Rational b = unitary_minor_lower_bound(d, k, t);
    json header = {{"ensemble", "unitary-minor"}, {"d", d}, {"k", k}, {"t", t}, {"name", "inverse-binomial"}};
    emit_single(ctx, out, header, {"d", "k", "t"}, to_string(b));
}

// traces

void emit_trace_entries(Context& ctx, std::ostream& out, const TraceTable& table, bool all)
{
    std::vector<const TraceEntry*> rows;
    for (const auto& e : table.entries)
        if (all || e.value != 0)
            rows.push_back(&e);
    auto value_text = [](const Rational& v) { return to_string(v); };
    auto factor_text = [](const Rational& v) { return denominator(v) == 1 ? factored(numerator(v)) : to_string(v); };

    switch (ctx.format) {
    case Format::Json: {
        json j = {{"kind", to_string(table.kind)}, {"k", table.grid.k}, {"t", table.grid.t}};
        j["entries"] = json::array();
        for (const auto* e : rows)
            j["entries"].push_back({{"shape", e->shape.str()},
                                    {"value", value_text(e->value)},
                                    {"factored", factor_text(e->value)},
                                    {"method", to_string(e->method)}});
        out << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        csv_row(out, {"shape", "value", "factored", "method"});
        for (const auto* e : rows)
            csv_row(out, {'"' + e->shape.str() + '"', value_text(e->value), factor_text(e->value), to_string(e->method)});
        break;
    case Format::Human:
        for (const auto* e : rows)
            out << e->shape.str() << ' ' << value_text(e->value) << " = " << factor_text(e->value) << " ["
                << to_string(e->method) << "]\n";
        break;
    }
}

void traces(Context& ctx, TraceKind kind, unsigned k, unsigned t, const std::vector<unsigned>& shape, bool all,
            std::ostream& out)
{
    GridSpec grid(k, t);
    if (!shape.empty()) {
        Partition p = parse_shape(shape);
        Int v = kind == TraceKind::RC ? trace_rc_general(p, grid, ctx.guard) : trace_rcrc_general(p, grid, ctx.guard);
        TraceTable single{grid, kind, {{p, Rational(v), TraceMethod::PsiConversion}}};
        emit_trace_entries(ctx, out, single, true);
        return;
    }
    emit_trace_entries(ctx, out, trace_table(grid, kind, ctx.guard), all);
}

// tables

void table_appendix_a(Context& ctx, std::ostream& out)
{
    std::array grids{GridSpec(3, 3), GridSpec(4, 3)};
    if (ctx.format == Format::Json) {
        json all = json::array();
        for (const auto& g : grids) {
            TraceTable tab = trace_table(g, TraceKind::RC, ctx.guard);
            json j = {{"k", g.k}, {"t", g.t}, {"entries", json::array()}};
            for (const auto& e : tab.entries)
                if (e.value != 0)
                    j["entries"].push_back({{"shape", e.shape.str()},
                                            {"value", to_string(e.value)},
                                            {"factored", factored(numerator(e.value))}});
            all.push_back(std::move(j));
        }
        out << all.dump(2) << '\n';
        return;
    }
    csv_row(out, {"k", "t", "shape", "value", "factored"});
    for (const auto& g : grids) {
        TraceTable tab = trace_table(g, TraceKind::RC, ctx.guard);
        for (const auto& e : tab.entries)
            if (e.value != 0)
                csv_row(out, {std::to_string(g.k), std::to_string(g.t), '"' + e.shape.str() + '"', to_string(e.value),
                              factored(numerator(e.value))});
    }
}

Int appendix_b_scale(unsigned t)
{
    return factorial(t) * factorial(t - 1) * factorial(t / 3) * factorial(t / 4) * factorial(t / 5) *
           factorial(t / 7);
}

void table_appendix_b(Context& ctx, unsigned t_min, unsigned t_max, std::ostream& out)
{
    if (t_min == 0 || t_min > t_max)
        throw DomainError("tables appendix-b: need 1 <= --t-min <= --t-max");
    json rows = json::array();
    if (ctx.format != Format::Json)
        csv_row(out, {"t", "scaled_moment", "ratio"});
    for (unsigned t = t_min; t <= t_max; ++t) {
        MomentReport r = gaussian_moment_exact(3, t, MomentMethod::Auto, ctx.budget);
        std::string scaled = to_string(r.value / Rational(appendix_b_scale(t)));
        std::string ratio = ratio15(*r.normalized_ratio);
        if (ctx.format == Format::Json)
            rows.push_back({{"t", t}, {"scaled_moment", scaled}, {"ratio", ratio}});
        else
            csv_row(out, {std::to_string(t), scaled, ratio});
    }
    if (ctx.format == Format::Json)
        out << rows.dump(2) << '\n';
}

void table_section_4_6(Context& ctx, const std::vector<unsigned>& ks, unsigned t_max, std::ostream& out)
{
    if (ks.empty() || t_max == 0)
        throw DomainError("tables section-4-6: need at least one --k and --t-max >= 1");
    // the printed table truncates its ratios to three decimals
    auto ratio3 = [](const Rational& q) { return fixed_decimals(q, 3, Rounding::TowardZero); };
    std::vector<std::vector<MomentReport>> cols;
    for (unsigned k : ks) {
        cols.emplace_back();
        for (unsigned t = 1; t <= t_max; ++t)
            cols.back().push_back(gaussian_moment_exact(k, t, MomentMethod::Auto, ctx.budget));
    }
    if (ctx.format == Format::Json) {
        json rows = json::array();
        for (unsigned t = 1; t <= t_max; ++t) {
            json row = {{"t", t}};
            for (std::size_t c = 0; c < ks.size(); ++c) {
                const auto& r = cols[c][t - 1];
                row["moment_k" + std::to_string(ks[c])] = to_string(r.value);
                row["ratio_k" + std::to_string(ks[c])] = ratio3(*r.normalized_ratio);
            }
            rows.push_back(std::move(row));
        }
        out << rows.dump(2) << '\n';
        return;
    }
    out << 't';
    for (unsigned k : ks)
        out << ",moment_k" << k << ",ratio_k" << k;
    out << '\n';
    for (unsigned t = 1; t <= t_max; ++t) {
        out << t;
        for (std::size_t c = 0; c < ks.size(); ++c) {
            const auto& r = cols[c][t - 1];
            out << ',' << to_string(r.value) << ',' << ratio3(*r.normalized_ratio);
        }
        out << '\n';
    }
}

// Monte Carlo

struct McOptions {
    Ensemble ensemble = Ensemble::Gaussian;
    unsigned k = 3;
    unsigned d = 0;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::vector<unsigned> orders{1, 2};
    std::uint64_t shard_size = 16384;
    double gate_sigma = 4.0;
    std::string dump;
};

void mc_estimate(Context& ctx, const McOptions& opt, std::ostream& out)
{
    SampleConfig cfg;
    cfg.ensemble = opt.ensemble;
    cfg.k = opt.k;
    cfg.d = opt.d;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.orders = opt.orders;
    cfg.threads = ctx.budget.threads;
    cfg.shard_size = opt.shard_size;
    cfg.gate_sigma = opt.gate_sigma;
    if (!opt.dump.empty()) {
        std::ofstream f(opt.dump);
        if (!f)
            throw DomainError("mc estimate: cannot open dump file " + opt.dump);
        dump_samples(cfg, f);
    }
    EstimateReport rep = estimate_moments(cfg, ctx.budget);

    switch (ctx.format) {
    case Format::Json: {
        json j = {{"ensemble", to_string(cfg.ensemble)}, {"k", cfg.k},           {"d", cfg.d},
                  {"samples", cfg.samples},             {"seed", cfg.seed},     {"gate_sigma", cfg.gate_sigma}};
        j["moments"] = json::array();
        for (const auto& m : rep.moments) {
            json e = {{"t", m.t}, {"mean", m.mean}};
            e["standard_error"] = m.standard_error ? json(*m.standard_error) : json(nullptr);
            e["exact"] = m.exact ? json(to_string(*m.exact)) : json(nullptr);
            e["z_score"] = m.z_score ? json(*m.z_score) : json(nullptr);
            e["gated"] = m.gated;
            e["within_gate"] = m.within_gate();
            j["moments"].push_back(std::move(e));
        }
        out << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
    case Format::Human: {
        auto opt_num = [](const std::optional<double>& v) { return v ? num12(*v) : std::string("NA"); };
        csv_row(out, {"t", "mean", "standard_error", "exact", "z_score", "gated", "within_gate"});
        for (const auto& m : rep.moments)
            csv_row(out, {std::to_string(m.t), num12(m.mean), opt_num(m.standard_error),
                          m.exact ? to_string(*m.exact) : "NA", opt_num(m.z_score), m.gated ? "yes" : "no",
                          m.within_gate() ? "yes" : "no"});
        break;
    }
    }
}

// large deviations

std::vector<double> grid_or_list(const std::vector<double>& list, std::optional<double> lo, std::optional<double> hi,
                                 double step, const char* who)
{
    if (!list.empty())
        return list;
    if (!lo || !hi)
        return {};
    if (!(step > 0) || *hi < *lo)
        throw DomainError(std::string(who) + ": need a positive --step and --max >= --min");
    std::vector<double> out;
    for (std::size_t i = 0;; ++i) {
        double v = *lo + static_cast<double>(i) * step;
        if (v > *hi + step * 1e-9)
            break;
        out.push_back(v);
    }
    return out;
}

void ldev_lambda(Context& ctx, const std::vector<double>& ts, std::ostream& out)
{
    if (ctx.format == Format::Json) {
        json rows = json::array();
        for (double t : ts) {
            ldev::Interval v = ldev::lambda_scgf(t);
            rows.push_back({{"t", t}, {"lambda_lo", v.lo}, {"lambda_hi", v.hi}});
        }
        out << rows.dump(2) << '\n';
        return;
    }
    ldev::write_lambda_csv(ts, out);
}

void ldev_omega(Context& ctx, const std::vector<double>& ys, std::ostream& out)
{
    auto rows = ldev::omega_curve(ys);
    if (ctx.format == Format::Json) {
        json j = json::array();
        for (const auto& p : rows)
            j.push_back({{"y", p.y}, {"t_star", p.t_star}, {"rate", p.rate}, {"omega", p.omega}});
        out << j.dump(2) << '\n';
        return;
    }
    ldev::write_omega_csv(rows, out);
}

void ldev_rate(Context& ctx, const std::vector<double>& ys, std::ostream& out)
{
    auto branch_name = [](ldev::RateBranch b) {
        switch (b) {
        case ldev::RateBranch::Computed:
            return "computed";
        case ldev::RateBranch::SmallDeviation:
            return "small-deviation";
        case ldev::RateBranch::Gap:
            return "gap";
        }
        return "";
    };
    json rows = json::array();
    if (ctx.format != Format::Json)
        csv_row(out, {"y", "branch", "rate_lo", "rate_hi", "t_star", "omega"});
    for (double y : ys) {
        ldev::RateResult r = ldev::rate_function(y);
        if (ctx.format == Format::Json) {
            json j = {{"y", y}, {"branch", branch_name(r.branch)}, {"rate_lo", r.bounds.lo}, {"rate_hi", r.bounds.hi}};
            if (r.point) {
                j["t_star"] = r.point->t_star;
                j["omega"] = r.point->omega;
            }
            rows.push_back(std::move(j));
        } else {
            csv_row(out, {num12(y), branch_name(r.branch), num12(r.bounds.lo), num12(r.bounds.hi),
                          r.point ? num12(r.point->t_star) : "NA", r.point ? num12(r.point->omega) : "NA"});
        }
    }
    if (ctx.format == Format::Json)
        out << rows.dump(2) << '\n';
}

void ldev_det_rate(Context& ctx, const std::vector<double>& zs, std::ostream& out)
{
    if (ctx.format == Format::Json) {
        json rows = json::array();
        for (double z : zs)
            rows.push_back({{"z", z}, {"rate", ldev::det_rate_function(z)}});
        out << rows.dump(2) << '\n';
        return;
    }
    csv_row(out, {"z", "rate"});
    for (double z : zs)
        csv_row(out, {num12(z), num12(ldev::det_rate_function(z))});
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact and sampled moments of permanents of random matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    std::function<void(std::ostream&)> action;

    const std::map<std::string, Format> formats{{"human", Format::Human}, {"json", Format::Json}, {"csv", Format::Csv}};
    app.add_option("--format", ctx.format, "Output format: human, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--threads", ctx.threads, "Worker threads")->envname("PERMOMENTS_THREADS")->check(CLI::PositiveNumber);
    app.add_flag("--force", ctx.force, "Lift resource budgets (prints a warning)");
    app.add_option("-o,--output", ctx.output, "Write the report to this file instead of stdout");
    app.add_option("--budget-k3-t", ctx.budget.k3_max_t, "Largest t for k=3 magic-square moments");
    app.add_option("--budget-k4-t", ctx.budget.k4_max_t, "Largest t for k=4 magic-square moments");
    app.add_option("--budget-transfer-t", ctx.budget.transfer_max_t, "Largest t for the row-transfer method");
    app.add_option("--budget-transfer-side", ctx.budget.transfer_max_side, "Largest side for the row-transfer method");
    app.add_option("--budget-classes", ctx.budget.max_classes, "Symmetry-class limit for the level recursion");
    app.add_option("--budget-cells", ctx.guard.max_cells, "Largest kt for full trace tables");
    app.add_option("--budget-depth", ctx.guard.max_depth, "Largest min(k,t) for full trace tables");

    // moments
    auto* moments = app.add_subcommand("moments", "Exact moments E|Perm|^{2t} and determinant moments");
    moments->require_subcommand(1);

    unsigned g_k = 0;
    std::optional<unsigned> g_t, g_tmax;
    MomentMethod g_method = MomentMethod::Auto;
    const std::map<std::string, MomentMethod> methods{{"auto", MomentMethod::Auto},
                                                      {"closed-form", MomentMethod::ClosedForm},
                                                      {"magic-square", MomentMethod::MagicSquare},
                                                      {"row-transfer", MomentMethod::RowTransfer},
                                                      {"expansion", MomentMethod::Expansion}};
    auto* mg = moments->add_subcommand("gaussian", "Gaussian matrices, exact integer moments");
    mg->add_option("--k", g_k, "Matrix side")->required();
    mg->add_option("--t", g_t, "Moment order (start of the range with --t-max)");
    mg->add_option("--t-max", g_tmax, "Emit every order up to this one");
    mg->add_option("--method", g_method, "auto, closed-form, magic-square, row-transfer or expansion")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    mg->callback([&] { action = [&](std::ostream& o) { moments_gaussian(ctx, g_k, t_range(g_t, g_tmax), g_method, o); }; });

    unsigned u_d = 0, u_k = 0, u_t = 0;
    auto* mu = moments->add_subcommand("unitary", "Leading k x k minors of Haar unitaries, exact rationals");
    mu->add_option("--d", u_d, "Unitary dimension")->required();
    mu->add_option("--k", u_k, "Minor size")->required();
    mu->add_option("--t", u_t, "Moment order")->required();
    mu->callback([&] { action = [&](std::ostream& o) { moments_unitary(ctx, u_d, u_k, u_t, o); }; });

    auto* md = moments->add_subcommand("det", "Determinant moments E|det|^{2t}");
    md->require_subcommand(1);
    unsigned dg_k = 0, dg_t = 0;
    auto* mdg = md->add_subcommand("gaussian", "Gaussian matrices");
    mdg->add_option("--k", dg_k, "Matrix side")->required();
    mdg->add_option("--t", dg_t, "Moment order")->required();
    mdg->callback([&] {
        action = [&](std::ostream& o) {
            emit_single(ctx, o, {{"ensemble", "det-gaussian"}, {"k", dg_k}, {"t", dg_t}}, {"k", "t"},
                        to_string(det_moment_gaussian(dg_k, dg_t)));
        };
    });
    unsigned du_d = 0, du_k = 0, du_t = 0;
    auto* mdu = md->add_subcommand("unitary", "Leading minors of Haar unitaries");
    mdu->add_option("--d", du_d, "Unitary dimension")->required();
    mdu->add_option("--k", du_k, "Minor size")->required();
    mdu->add_option("--t", du_t, "Moment order")->required();
    mdu->callback([&] {
        action = [&](std::ostream& o) {
            emit_single(ctx, o, {{"ensemble", "det-unitary-minor"}, {"d", du_d}, {"k", du_k}, {"t", du_t}},
                        {"d", "k", "t"}, to_string(det_moment_unitary_minor(du_d, du_k, du_t)));
        };
    });

    unsigned dv_k = 0, dv_t = 0;
    auto* mdv = moments->add_subcommand("divergence", "Collision sums of the two magic-square distributions");
    mdv->add_option("--k", dv_k, "Matrix side")->required();
    mdv->add_option("--t", dv_t, "Moment order")->required();
    mdv->callback([&] { action = [&](std::ostream& o) { moments_divergence(ctx, dv_k, dv_t, o); }; });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Lower bounds on the moments");
    bounds->require_subcommand(1);
    unsigned bg_k = 0, bg_t = 0;
    auto* bg = bounds->add_subcommand("gaussian", "Truncated expansion and determinant bounds");
    bg->add_option("--k", bg_k, "Matrix side")->required();
    bg->add_option("--t", bg_t, "Moment order")->required();
    bg->callback([&] { action = [&](std::ostream& o) { bounds_gaussian(ctx, bg_k, bg_t, o); }; });
    unsigned bu_d = 0, bu_k = 0, bu_t = 0;
    auto* bu = bounds->add_subcommand("unitary", "Inverse-binomial bound for unitary minors");
    bu->add_option("--d", bu_d, "Unitary dimension")->required();
    bu->add_option("--k", bu_k, "Minor size")->required();
    bu->add_option("--t", bu_t, "Moment order")->required();
    bu->callback([&] { action = [&](std::ostream& o) { bounds_unitary(ctx, bu_d, bu_k, bu_t, o); }; });

    // traces
    auto* tr = app.add_subcommand("traces", "Traces tr rho_lambda(RC) and tr rho_lambda(RCRC)");
    tr->require_subcommand(1);
    unsigned tr_k = 0, tr_t = 0;
    std::vector<unsigned> tr_shape;
    bool tr_all = false;
    for (auto [name, kind] : {std::pair{"rc", TraceKind::RC}, std::pair{"rcrc", TraceKind::RCRC}}) {
        auto* sub = tr->add_subcommand(name, std::string("Traces against ") + (kind == TraceKind::RC ? "RC" : "RCRC"));
        sub->add_option("--k", tr_k, "Grid rows")->required();
        sub->add_option("--t", tr_t, "Grid columns")->required();
        sub->add_option("--shape", tr_shape, "Single shape, parts separated by commas")->delimiter(',');
        sub->add_flag("--all", tr_all, "Include shapes whose trace vanishes");
        sub->callback([&, kind] { action = [&, kind](std::ostream& o) { traces(ctx, kind, tr_k, tr_t, tr_shape, tr_all, o); }; });
    }

    // tables
    auto* tables = app.add_subcommand("tables", "Regenerate the published tables");
    tables->require_subcommand(1);
    auto* ta = tables->add_subcommand("appendix-a", "Nonzero RC traces on the 3x3 and 4x3 grids");
    ta->callback([&] { action = [&](std::ostream& o) { table_appendix_a(ctx, o); }; });
    unsigned tb_min = 1, tb_max = 30;
    auto* tb = tables->add_subcommand("appendix-b", "k=3 moments with the factorial scaling, ratio to 15 digits");
    tb->add_option("--t-min", tb_min, "First order");
    tb->add_option("--t-max", tb_max, "Last order");
    tb->callback([&] { action = [&](std::ostream& o) { table_appendix_b(ctx, tb_min, tb_max, o); }; });
    std::vector<unsigned> ts_k{3, 4};
    unsigned ts_max = 10;
    auto* ts = tables->add_subcommand("section-4-6", "Exact moments for k=3,4 with ratios to 3 decimals");
    ts->add_option("--k", ts_k, "Matrix sides, comma separated")->delimiter(',');
    ts->add_option("--t-max", ts_max, "Last order");
    ts->callback([&] { action = [&](std::ostream& o) { table_section_4_6(ctx, ts_k, ts_max, o); }; });

    // plethysm
    unsigned pl_k = 0, pl_t = 0;
    std::vector<unsigned> pl_shape;
    auto* pl = app.add_subcommand("pleth", "Plethysm coefficient of a shape for the k x t grid");
    pl->add_option("--k", pl_k, "Inner degree")->required();
    pl->add_option("--t", pl_t, "Outer degree")->required();
    pl->add_option("--shape", pl_shape, "Shape, parts separated by commas")->delimiter(',')->required();
    pl->callback([&] {
        action = [&](std::ostream& o) {
            Partition p = parse_shape(pl_shape);
            emit_single(ctx, o, {{"k", pl_k}, {"t", pl_t}, {"shape", p.str()}}, {"k", "t", "shape"},
                        to_string(plethysm(p, pl_k, pl_t)));
        };
    });

    // Monte Carlo
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates");
    mc->require_subcommand(1);
    McOptions mco;
    const std::map<std::string, Ensemble> ensembles{{"gaussian", Ensemble::Gaussian},
                                                    {"unitary", Ensemble::UnitaryMinor},
                                                    {"det-gaussian", Ensemble::DeterminantGaussian},
                                                    {"det-unitary", Ensemble::DeterminantUnitaryMinor}};
    auto* me = mc->add_subcommand("estimate", "Sample |Perm|^2 or |det|^2 and estimate its moments");
    me->add_option("--ensemble", mco.ensemble, "gaussian, unitary, det-gaussian or det-unitary")
        ->transform(CLI::CheckedTransformer(ensembles, CLI::ignore_case));
    me->add_option("--k", mco.k, "Matrix side")->required();
    me->add_option("--d", mco.d, "Unitary dimension");
    me->add_option("--samples", mco.samples, "Number of samples")->check(CLI::PositiveNumber);
    me->add_option("--seed", mco.seed, "64-bit seed");
    me->add_option("--orders", mco.orders, "Moment orders t, comma separated")->delimiter(',');
    me->add_option("--shard-size", mco.shard_size, "Samples per substream")->check(CLI::PositiveNumber);
    me->add_option("--gate-sigma", mco.gate_sigma, "Acceptance threshold in standard errors");
    me->add_option("--dump", mco.dump, "Also write every sampled |statistic|^2 to this file");
    me->callback([&] { action = [&](std::ostream& o) { mc_estimate(ctx, mco, o); }; });

    // large deviations
    auto* ld = app.add_subcommand("ldev", "Large-deviation quantities (binary64)");
    ld->require_subcommand(1);
    std::vector<double> ld_list;
    std::optional<double> ld_min, ld_max;
    double ld_step = 0.25;
    auto grid_opts = [&](CLI::App* sub, const std::string& var) {
        sub->add_option("--" + var, ld_list, "Points, comma separated")->delimiter(',');
        sub->add_option("--min", ld_min, "Grid start");
        sub->add_option("--max", ld_max, "Grid end");
        sub->add_option("--step", ld_step, "Grid step");
    };
    auto* ll = ld->add_subcommand("lambda", "Cumulant function lambda(t); CSV columns t,lambda_lo,lambda_hi");
    grid_opts(ll, "t");
    ll->callback([&] {
        action = [&](std::ostream& o) {
            auto pts = grid_or_list(ld_list, ld_min, ld_max, ld_step, "ldev lambda");
            if (pts.empty())
                pts = grid_or_list({}, 0.0, 10.0, 0.25, "ldev lambda");
            ldev_lambda(ctx, pts, o);
        };
    });
    auto* lo = ld->add_subcommand("omega", "Rate function on the computed branch; CSV columns y,t_star,rate,omega");
    grid_opts(lo, "y");
    lo->callback([&] {
        action = [&](std::ostream& o) {
            auto pts = grid_or_list(ld_list, ld_min, ld_max, ld_step, "ldev omega");
            if (pts.empty() && !ld_min && !ld_max)
                pts = {0.25, 0.5, 1, 2, 4};
            ldev_omega(ctx, pts, o);
        };
    });
    auto* lr = ld->add_subcommand("rate", "Rate function on every branch, with bounds where only bounds exist");
    grid_opts(lr, "y");
    lr->callback([&] {
        action = [&](std::ostream& o) { ldev_rate(ctx, grid_or_list(ld_list, ld_min, ld_max, ld_step, "ldev rate"), o); };
    });
    auto* lz = ld->add_subcommand("det-rate", "Determinant rate function 2(z+1/4)^2; CSV columns z,rate");
    grid_opts(lz, "z");
    lz->callback([&] {
        action = [&](std::ostream& o) {
            auto pts = grid_or_list(ld_list, ld_min, ld_max, ld_step, "ldev det-rate");
            if (pts.empty() && !ld_min && !ld_max)
                pts = grid_or_list({}, 0.0, 3.0, 0.25, "ldev det-rate");
            ldev_det_rate(ctx, pts, o);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Usage;
    }

    ctx.apply();
    if (ctx.force)
        err << "warning: --force lifts the resource budgets; the run may take very long or exhaust memory\n";

    std::ostringstream buf;
    try {
        action(buf);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return Resource;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return Unsupported;
    } catch (const DomainError& e) {
        err << "invalid arguments: " << e.what() << '\n';
        return Usage;
    }

    if (ctx.output.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(ctx.output, std::ios::binary);
        if (!f) {
            err << "invalid arguments: cannot open output file " << ctx.output << '\n';
            return Usage;
        }
        f << buf.str();
    }
    return Ok;
}

} // namespace pm::cli
