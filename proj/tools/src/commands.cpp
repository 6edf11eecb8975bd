#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rconvex/geometry.hpp"
#include "rconvex/potential.hpp"
#include "rconvex/products.hpp"
#include "rconvex/riesz.hpp"
#include "rconvex/spectra.hpp"

namespace rconvex::cli {
namespace {

using io::cell;
using io::CsvTable;

constexpr double kPi = std::numbers::pi;

Json number_or(double v, const char* label) { return std::isfinite(v) ? Json(v) : Json(label); }

long long effective_seed(Section& root, const RunOptions& opts, long long fallback) {
  const long long s = root.get<long long>("seed", fallback);
  return opts.seed ? *opts.seed : s;
}

void apply_seed(Json& config, const RunOptions& opts) {
  if (opts.seed) config["seed"] = *opts.seed;
}

Json triangle_json(const Triangle& t) { return Json::array({io::to_json(t.a), io::to_json(t.b), io::to_json(t.c)}); }

// ---------------------------------------------------------------- geometry

}  // namespace

RunResult cmd_geometry(Json config, const RunOptions& opts) {
  Section root(config, "geometry");
  const auto e = io::compact_set_from_json(root.raw("set"));
  const auto grid = io::grid_spec_from_json(root.raw("grid"));
  const Bbox box = grid.bbox();
  const Bbox eb = e.bbox();
  const double margin = std::min({eb.lo.real() - box.lo.real(), eb.lo.imag() - box.lo.imag(),
                                  box.hi.real() - eb.hi.real(), box.hi.imag() - eb.hi.imag()});
  const double r_lo = root.get("r_lo", 4 * grid.h);
  const double r_hi = root.get("r_hi", margin / 2);
  require(r_hi > r_lo, ErrorKind::InvalidArgument, "config: geometry needs r_hi > r_lo; widen the grid around the set");
  const double tol = root.get("tol", grid.h / 2);
  const bool curvature =
      root.get("curvature", e.get_if<FinitePoints>() != nullptr || e.get_if<SampledCurve>() != nullptr);
  const auto hull_radii = root.get("hull_radii", std::vector<double>{});
  const auto t_values = root.get("t_values", std::vector<double>{});
  const double t_max = root.get("t_max", (margin - 3 * grid.h) / 2);
  root.finish();

  Output out(opts, "geometry", config);
  Json summary;
  const auto roc = geometry::radius_of_convexity(e, grid, r_lo, r_hi, tol);
  summary["r0"] = roc.unbounded ? Json("unbounded (>= r_hi)") : Json(roc.value);
  summary["r0_unbounded"] = roc.unbounded;
  summary["r0_bracket"] = {roc.lo, roc.hi};
  summary["grid_h"] = grid.h;

  if (curvature) {
    const auto cr = geometry::global_curvature_radius(e);
    summary["r_g"] = number_or(cr.value, "infinite");
    if (cr.witness) summary["r_g_witness"] = triangle_json(*cr.witness);
  }

  const auto t0 = geometry::t0_estimate(e, grid, t_max, roc.unbounded ? std::nullopt : std::optional(roc.value));
  summary["t0"] = t0.t0;
  summary["t0_exact"] = t0.exact;
  summary["t0_quarter_radius_bound"] = number_or(t0.quarter_radius_bound, "n/a");

  const auto dist = geometry::distance_field(e, grid);
  Json hulls = Json::array();
  for (std::size_t k = 0; k < hull_radii.size(); ++k) {
    const auto h = geometry::r_convex_hull(e, hull_radii[k], dist);
    const std::string stem = "hull_" + std::to_string(k);
    out.pgm(stem + ".pgm", h.mask);
    out.mask_csv(stem + ".csv", h.mask);
    Json row = io::to_json(h);
    row["pgm"] = stem + ".pgm";
    row["csv"] = stem + ".csv";
    hulls.push_back(row);
  }
  summary["hulls"] = hulls;

  if (!t_values.empty()) {
    CsvTable table{{"t", "components", "unbounded_label"}, {}};
    for (double t : t_values) {
      const auto c = geometry::omega_t_components(dist, t);
      table.add_row({cell(t), cell(static_cast<long long>(c.count)), cell(static_cast<long long>(c.unbounded_label))});
    }
    out.csv("connectivity.csv", table);
  }
  out.json("geometry.json", summary);
  return {out.files(), summary};
}

// ---------------------------------------------------------------- green

namespace {

std::vector<Point> read_queries(Section& root) {
  std::vector<Point> q;
  if (root.has("queries")) {
    const auto& arr = root.raw("queries");
    require(arr.is_array(), ErrorKind::InvalidArgument, "config: green.queries must be an array");
    for (const auto& p : arr) q.push_back(io::point_from_json(p));
  }
  if (root.has("queries_csv")) {
    const auto path = root.need<std::string>("queries_csv");
    const auto more = io::parse_points_csv(io::read_file(path));
    q.insert(q.end(), more.begin(), more.end());
  }
  require(!q.empty(), ErrorKind::InvalidArgument, "config: green needs queries or queries_csv");
  return q;
}

potential::CollocationOptions collocation_options(Section s) {
  potential::CollocationOptions o;
  o.density = s.get("density", o.density);
  o.n_sources = s.get("n_sources", o.n_sources);
  o.n_collocation = s.get("n_collocation", o.n_collocation);
  o.outer_only = s.get("outer_only", o.outer_only);
  o.sv_threshold = s.get("sv_threshold", o.sv_threshold);
  s.finish();
  return o;
}

}  // namespace

RunResult cmd_green(Json config, const RunOptions& opts) {
  apply_seed(config, opts);
  Section root(config, "green");
  const auto e = io::compact_set_from_json(root.raw("set"));
  const double t = root.need<double>("t");
  const auto queries = read_queries(root);
  const auto copts = collocation_options(root.sub_or_empty("collocation"));
  const long long seed = effective_seed(root, opts, 0);
  std::optional<double> ratio_t;
  int ratio_samples = 0;
  double ratio_radius = 0.0;
  if (root.has("ratio")) {
    auto l = root.sub("ratio");
    ratio_t = l.need<double>("t");
    ratio_samples = l.get("samples", 200);
    ratio_radius = l.get("radius", 4.0);
    l.finish();
    require(ratio_samples > 0 && ratio_radius > 0, ErrorKind::InvalidArgument, "config: ratio needs samples and radius");
  }
  root.finish();

  Output out(opts, "green", config);
  const auto est = potential::green_collocation(e, t, queries, copts);

  const auto* finite = e.get_if<FinitePoints>();
  const auto* disks = e.get_if<DiskUnion>();
  const bool one_disk = disks && disks->disks.size() == 1 && t == 0.0;
  std::vector<std::string> header = {"re", "im", "d", "G"};
  if (finite) header.insert(header.end(), {"v_t", "G_minus_v_t", "ok"});
  if (one_disk) header.insert(header.end(), {"G_exact", "abs_err"});
  CsvTable table{header, {}};

  double min_gap = std::numeric_limits<double>::infinity(), max_err = 0.0;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const Point z = queries[k];
    const double g = est.values[k];
    std::vector<std::string> row = {cell(z.real()), cell(z.imag()), cell(e.distance(z)), cell(g)};
    if (finite) {
      const double v = potential::vt_lower_bound(*finite, t, z);
      min_gap = std::min(min_gap, g - v);
      row.insert(row.end(), {cell(v), cell(g - v), cell(static_cast<long long>(g - v >= -est.boundary_residual))});
    }
    if (one_disk) {
      const Disk& d = disks->disks[0];
      const double exact = std::log(std::abs(z - d.center) / d.radius);
      max_err = std::max(max_err, std::abs(g - exact));
      row.insert(row.end(), {cell(exact), cell(std::abs(g - exact))});
    }
    table.add_row(row);
  }
  out.csv("queries.csv", table);

  Json summary = {{"method", potential::to_string(est.method)},
                  {"boundary_residual", est.boundary_residual},
                  {"sources", est.sources.size()},
                  {"rank", est.rank},
                  {"condition", est.condition},
                  {"clamped", est.clamped},
                  {"negative", est.negative}};
  if (finite) {
    summary["min_G_minus_v_t"] = min_gap;
    summary["lower_bound_holds"] = min_gap >= -est.boundary_residual;
  }
  if (one_disk) summary["max_abs_G_minus_closed_form"] = max_err;

  if (ratio_t) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Bbox b = e.bbox();
    const Point c = 0.5 * (b.lo + b.hi);
    std::vector<Point> samples;
    for (int guard = 0; static_cast<int>(samples.size()) < ratio_samples && guard < 1000 * ratio_samples; ++guard) {
      const Point z = c + std::polar(ratio_radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
      if (e.distance(z) > *ratio_t) samples.push_back(z);
    }
    const auto lr = potential::lemma_l1_ratio(e, *ratio_t, samples, copts);
    CsvTable lt{{"re", "im", "d", "ratio"}, {}};
    for (std::size_t k = 0; k < samples.size(); ++k)
      lt.add_row({cell(samples[k].real()), cell(samples[k].imag()), cell(e.distance(samples[k])), cell(lr.ratios[k])});
    out.csv("ratio.csv", lt);
    summary["ratio"] = {{"t", *ratio_t}, {"infimum", lr.infimum}, {"argmin", io::to_json(lr.argmin)},
                        {"residual", lr.residual}, {"samples", samples.size()}};
  }
  out.json("green.json", {{"estimate", io::to_json(est)}, {"summary", summary}});
  return {out.files(), summary};
}

// ---------------------------------------------------------------- blaschke

namespace {

struct ProbeSide {
  double first, factor;
  int levels;
};

ProbeSide probe_side(Section s, double first, double factor, int levels) {
  ProbeSide p{s.get("first", first), s.get("factor", factor), s.get("levels", levels)};
  s.finish();
  require(p.first > 0 && p.factor > 0 && p.factor != 1 && p.levels >= 4, ErrorKind::InvalidArgument,
          "config: probe needs first > 0, factor != 1 and at least 4 levels");
  return p;
}

riesz::WeightPair weight_from(Section s) {
  const auto name = s.need<std::string>("name");
  riesz::WeightPair w;
  std::ostringstream label;
  if (name == "two_exponent" || name == "finite_set") {
    const bool two = name == "two_exponent";
    const double q = s.get("q", two ? 2.0 : 1.0);
    const double eps = s.get("eps", two ? 0.5 : 0.1);
    w = two ? riesz::weight_corollary1(q, eps) : riesz::weight_t3(q, eps);
    label << name << "(q=" << q << ",eps=" << eps << ")";
  } else if (name == "power") {
    const double p = s.need<double>("p");
    w = riesz::weight_power(p);
    label << "power(p=" << p << ")";
  } else {
    fail(ErrorKind::InvalidArgument, "config: unknown weight '" + name + "'");
  }
  s.finish();
  w.name = label.str();
  return w;
}

std::string status_name(quadrature::IntegralStatus s) {
  switch (s) {
    case quadrature::IntegralStatus::Finite: return "Finite";
    case quadrature::IntegralStatus::Infinite: return "Infinite";
    case quadrature::IntegralStatus::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace

RunResult cmd_blaschke(Json config, const RunOptions& opts) {
  apply_seed(config, opts);
  Section root(config, "blaschke");
  const auto e = io::compact_set_from_json(root.raw("set"));
  auto vs = root.sub_or_empty("v");
  const auto v_type = vs.get<std::string>("type", "distance_power");
  require(v_type == "distance_power", ErrorKind::InvalidArgument, "config: v.type must be distance_power");
  const double v_q = vs.get("q", 2.0);
  vs.finish();
  require(v_q > 0, ErrorKind::InvalidArgument, "config: v.q must be positive");

  root.get("weights", Json::array({{{"name", "two_exponent"}, {"q", 2.0}, {"eps", 0.5}}}));
  auto& wj = root.raw("weights");
  require(wj.is_array() && !wj.empty(), ErrorKind::InvalidArgument, "config: weights must be a nonempty array");
  std::vector<riesz::WeightPair> weights;
  for (std::size_t k = 0; k < wj.size(); ++k)
    weights.push_back(weight_from(Section(wj[k], root.where("weights[" + std::to_string(k) + "]"))));

  auto ps = root.sub_or_empty("probes");
  const auto near = probe_side(ps.sub_or_empty("near"), 1.0, 0.5, 8);
  const auto far = probe_side(ps.sub_or_empty("far"), 1.0, 2.0, 9);
  const int cells = ps.get("cells", 32);
  ps.finish();

  std::vector<double> gm_t;
  int gm_shells = 10, gm_cells = 64;
  if (root.has("green_mass")) {
    auto g = root.sub("green_mass");
    gm_t = g.need<std::vector<double>>("t");
    gm_shells = g.get("shells", gm_shells);
    gm_cells = g.get("cells", gm_cells);
    g.finish();
  }

  std::optional<products::ZeroData> zeros;
  std::optional<GridSpec> zero_grid;
  if (root.has("products")) {
    auto p = root.sub("products");
    std::vector<Point> zs;
    for (const auto& z : p.raw("zeros")) zs.push_back(io::point_from_json(z));
    zeros = products::make_zero_data(e, zs, p.need<double>("q"));
    if (p.has("k_tail")) zeros->k_tail = p.need<double>("k_tail");
    zero_grid = io::grid_spec_from_json(p.raw("grid"));
    p.finish();
  }
  root.finish();

  Output out(opts, "blaschke", config);
  const auto v = [&](Point z) { return std::pow(e.distance(z), -v_q); };
  const auto coord = riesz::distance_coordinate(e);

  CsvTable table{{"weight", "side", "level", "cut", "partial", "classification", "ratio"}, {}};
  Json weights_json = Json::array();
  for (const auto& w : weights) {
    Json wjson = {{"name", w.name}, {"condition", status_name(w.condition311.status)}};
    if (w.condition_finite_set) wjson["condition_finite_set"] = status_name(w.condition_finite_set->status);
    riesz::Convergence worst = riesz::Convergence::Convergent;
    for (const auto& [side, p] : {std::pair{"near", near}, std::pair{"far", far}}) {
      std::vector<double> cuts;
      for (int k = 0; k < p.levels; ++k) cuts.push_back(p.first * std::pow(p.factor, k));
      const auto s = riesz::shell_series(e, v, coord, [&](Point z) { return w.phi(e.distance(z)); }, cuts, cells);
      std::vector<double> values = {0.0};
      values.insert(values.end(), s.partial.begin(), s.partial.end());
      const auto probe = riesz::divergence_probe(cuts, values);
      for (std::size_t k = 0; k < cuts.size(); ++k)
        table.add_row({cell(w.name), cell(std::string(side)), cell(static_cast<long long>(k)), cell(cuts[k]),
                       cell(values[k]), cell(riesz::to_string(probe.classification)), cell(probe.ratio)});
      wjson[side] = {{"classification", riesz::to_string(probe.classification)}, {"ratio", probe.ratio},
                     {"partial", values.back()}};
      if (static_cast<int>(probe.classification) > static_cast<int>(worst)) worst = probe.classification;
    }
    wjson["classification"] = riesz::to_string(worst);
    weights_json.push_back(wjson);
  }
  out.csv("blaschke.csv", table);
  Json summary = {{"weights", weights_json}};

  if (!gm_t.empty()) {
    CsvTable gm{{"t", "green_mass", "t_pow_minus_q", "rel_err"}, {}};
    Json rows = Json::array();
    for (double t : gm_t) {
      const Bbox b = e.bbox();
      const Point probe_point = b.hi + Point(2 * t + 1, 0);
      const auto g = potential::green_collocation(e, t, {probe_point});
      const auto s = riesz::green_mass_shells(e, t, g, v, gm_shells, gm_cells);
      const double target = std::pow(t, -v_q);
      const double rel = std::abs(s.extrapolated - target) / target;
      gm.add_row({cell(t), cell(s.extrapolated), cell(target), cell(rel)});
      rows.push_back({{"t", t}, {"green_mass", s.extrapolated}, {"target", target}, {"rel_err", rel}});
    }
    out.csv("green_mass.csv", gm);
    summary["green_mass"] = rows;
  }

  if (zeros) {
    const products::Product f(e, *zeros);
    const auto field = f.sample_log_abs(*zero_grid);
    const double bound = 1 + products::factor_bound_Ap(zeros->p);
    double sup = -std::numeric_limits<double>::infinity();
    CsvTable lf{{"re", "im", "log_abs_f"}, {}};
    for (int j = 0; j < field.ny(); ++j)
      for (int i = 0; i < field.nx(); ++i) {
        const Point z = field.node(i, j);
        lf.add_row({cell(z.real()), cell(z.imag()), cell(field(i, j))});
        const double d = e.distance(z);
        if (d > 0 && std::isfinite(field(i, j)) && zeros->K > 0)
          sup = std::max(sup, field(i, j) * std::pow(d, zeros->q) / zeros->K);
      }
    out.csv("log_abs_f.csv", lf);
    Json pj = {{"zero_data", io::to_json(*zeros)}, {"growth_sup", number_or(sup, "n/a")}, {"bound", bound},
               {"within_bound", sup <= bound}};
    out.json("product.json", pj);
    summary["product"] = pj;
  }
  out.json("blaschke.json", summary);
  return {out.files(), summary};
}

// ---------------------------------------------------------------- spectra

namespace {

spectra::Matrix gaussian_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  spectra::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Point(g(rng), g(rng));
  return m;
}

spectra::Matrix hermitian(std::mt19937_64& rng, int n, double s2) {
  const spectra::Matrix g = gaussian_matrix(rng, n);
  const spectra::Matrix h = (g + g.adjoint()) / 2.0;
  return h * (s2 / h.norm());
}

void check_q(const std::vector<double>& qs, const std::string& where) {
  require(!qs.empty(), ErrorKind::InvalidArgument, "config: " + where + " is empty");
  for (double q : qs) require(q >= 1.0, ErrorKind::InvalidArgument, "config: q must be at least 1 at " + where);
}

struct KatoSuite {
  int n;
  std::vector<double> q;
  int seeds;
  double a0_s2, b_s2;
};

struct IntegralOperatorSuite {
  std::vector<int> n;
  double eps;
  std::string kernel;
  double amplitude, width;
  int arc_samples;
};

Json run_kato(const KatoSuite& s, long long base_seed, CsvTable& table, const std::string& label) {
  std::vector<spectra::SpectralWeight> weights;
  for (double q : s.q) weights.push_back(spectra::power_weight(q));
  std::vector<double> max_ratio(s.q.size(), 0.0);

  auto add = [&](const std::string& seed, int n, const spectra::SpectralReport& r) {
    for (const auto& e : r.ratios) {
      if (e.weight != spectra::power_weight(e.q).name) continue;
      table.add_row({cell(label), cell(seed), cell(static_cast<long long>(n)), cell(e.q), cell(e.weight), cell(e.sum),
                     cell(e.schatten_q), cell(e.ratio)});
    }
  };

  // Commuting diagonal pair: the bound is attained.
  {
    spectra::Matrix a0 = spectra::Matrix::Zero(2, 2), b = spectra::Matrix::Zero(2, 2);
    a0(1, 1) = 1.0;
    b(0, 0) = 0.1;
    b(1, 1) = -0.1;
    const auto r = spectra::perturb_and_measure(spectra::MatrixOperator(a0, spectra::Tag::SelfAdjoint),
                                                spectra::MatrixOperator(b, spectra::Tag::SelfAdjoint), weights, s.q);
    add("commuting", 2, r);
  }
  for (int k = 0; k < s.seeds; ++k) {
    const long long seed = base_seed + k;
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    const spectra::MatrixOperator a0(hermitian(rng, s.n, s.a0_s2), spectra::Tag::SelfAdjoint);
    const spectra::MatrixOperator b(hermitian(rng, s.n, s.b_s2), spectra::Tag::SelfAdjoint);
    const auto r = spectra::perturb_and_measure(a0, b, weights, s.q);
    add(std::to_string(seed), s.n, r);
    for (const auto& e : r.ratios)
      for (std::size_t i = 0; i < s.q.size(); ++i)
        if (e.q == s.q[i] && e.weight == weights[i].name) max_ratio[i] = std::max(max_ratio[i], e.ratio);
  }
  Json maxes = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    maxes.push_back({{"q", s.q[i]}, {"max_ratio", max_ratio[i]}});
    ok = ok && max_ratio[i] <= 1 + 1e-10;
  }
  return {{"type", "kato"}, {"label", label}, {"seeds", s.seeds}, {"n", s.n}, {"max_ratios", maxes},
          {"max_ratio_le_1", ok}};
}

Json run_integral_operator(const IntegralOperatorSuite& s, CsvTable& table, const std::string& label) {
  const auto symbol = [](double x) { return std::polar(1.0, kPi * x / 2); };
  std::function<Point(double, double)> kernel;
  if (s.kernel == "gaussian") {
    kernel = [a = s.amplitude, w = s.width](double x, double y) { return Point(a * std::exp(-std::pow((x - y) / w, 2))); };
  } else {
    kernel = [a = s.amplitude](double, double) { return Point(a); };
  }
  const auto arc = make_curve(arc_samples(0.0, 1.0, 0.0, kPi / 2, s.arc_samples), false);
  spectra::MeasureOptions mo;
  mo.spectrum_set = arc;
  const auto weight = spectra::two_exponent_weight(3 + s.eps, 2 - s.eps);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  Json rows = Json::array();
  for (int n : s.n) {
    const auto [a0, b] = spectra::example3_operator(symbol, kernel, n);
    const auto r = spectra::perturb_and_measure(a0, b, {weight}, {2.0}, mo);
    const auto& e = r.ratios.front();
    table.add_row({cell(label), cell(static_cast<long long>(n)), cell(static_cast<long long>(r.counted.size())),
                   cell(e.sum), cell(e.outer_sum), cell(e.schatten_q), cell(e.ratio)});
    rows.push_back({{"n", n}, {"sum", e.sum}, {"ratio", e.ratio}, {"counted", r.counted.size()}});
    lo = std::min(lo, e.ratio);
    hi = std::max(hi, e.ratio);
  }
  return {{"type", "integral_operator"}, {"label", label}, {"weight", weight.name}, {"rows", rows},
          {"ratio_variation", lo > 0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity()}};
}

}  // namespace

RunResult cmd_spectra(Json config, const RunOptions& opts) {
  apply_seed(config, opts);
  Section root(config, "spectra");
  const long long seed = effective_seed(root, opts, 1);
  auto& suites_json = root.raw("suites");
  require(suites_json.is_array() && !suites_json.empty(), ErrorKind::InvalidArgument,
          "config: spectra.suites must be a nonempty array");

  std::vector<std::variant<KatoSuite, IntegralOperatorSuite>> suites;
  for (std::size_t k = 0; k < suites_json.size(); ++k) {
    Section s(suites_json[k], root.where("suites[" + std::to_string(k) + "]"));
    const auto type = s.need<std::string>("type");
    if (type == "kato") {
      KatoSuite ks{s.get("n", 20), s.get("q", std::vector<double>{1, 2, 3}), s.get("seeds", 200), s.get("a0_s2", 3.0),
                   s.get("b_s2", 0.1)};
      check_q(ks.q, s.where("q"));
      require(ks.n >= 1 && ks.seeds >= 0, ErrorKind::InvalidArgument, "config: kato needs n >= 1 and seeds >= 0");
      suites.emplace_back(ks);
    } else if (type == "integral_operator") {
      IntegralOperatorSuite es{s.get("n", std::vector<int>{50, 100, 200}), s.get("eps", 0.5),
                       s.get<std::string>("kernel", "gaussian"), s.get("amplitude", 1.0), s.get("width", 0.25),
                       s.get("arc_samples", 4096)};
      require(es.kernel == "gaussian" || es.kernel == "constant", ErrorKind::InvalidArgument,
              "config: kernel must be gaussian or constant");
      require(es.eps > 0 && es.eps < 2, ErrorKind::InvalidArgument, "config: integral_operator needs 0 < eps < 2");
      suites.emplace_back(es);
    } else {
      fail(ErrorKind::InvalidArgument, "config: unknown suite type '" + type + "'");
    }
    s.finish();
  }
  root.finish();

  Output out(opts, "spectra", config);
  CsvTable kato{{"suite", "seed", "n", "q", "weight", "sum", "schatten_q", "ratio"}, {}};
  CsvTable ex3{{"suite", "n", "counted", "sum", "outer_sum", "schatten_2_sq", "ratio"}, {}};
  Json results = Json::array();
  for (std::size_t k = 0; k < suites.size(); ++k) {
    const std::string label = "suite" + std::to_string(k);
    if (const auto* ks = std::get_if<KatoSuite>(&suites[k]))
      results.push_back(run_kato(*ks, seed, kato, label));
    else
      results.push_back(run_integral_operator(std::get<IntegralOperatorSuite>(suites[k]), ex3, label));
  }
  if (!kato.rows.empty()) out.csv("kato.csv", kato);
  if (!ex3.rows.empty()) out.csv("integral_operator.csv", ex3);
  Json summary = {{"suites", results}};
  out.json("spectra.json", summary);
  return {out.files(), summary};
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Numerical: return 4;
  }
  return 4;
}

}  // namespace rconvex::cli
