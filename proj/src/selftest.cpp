#include "cveacc/selftest.hpp"

#include <cmath>
#include <functional>

namespace cveacc {

namespace {

PhaseVector row(std::initializer_list<double> p, std::initializer_list<double> x) {
  Vector pv(static_cast<Eigen::Index>(p.size()));
  Vector xv(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double v : p) pv[i++] = v;
  i = 0;
  for (double v : x) xv[i++] = v;
  return PhaseVector::from_blocks(pv, xv);
}

Vector example_syndrome(int mode, double p, double x) {
  const double h = std::sqrt(0.5);
  const double t = std::sqrt(2.0);
  Vector s(4);
  switch (mode) {
    case 1:
      s << x, h * (p - x), x, h * p - t * x;
      break;
    case 2:
      s << x, t * x - h * p, p, h * x - t * p;
      break;
    case 3:
      s << 0.0, -t * x + h * p, x, -std::sqrt(4.5) * x;
      break;
    default:
      s << x, h * x, 0.0, h * (p + x);
      break;
  }
  return s;
}

SelftestCheck guarded(const std::string& name, double tolerance,
                      const std::function<SelftestCheck()>& body) {
  try {
    SelftestCheck c = body();
    c.name = name;
    c.tolerance = tolerance;
    c.passed = c.passed && c.deviation <= tolerance;
    return c;
  } catch (const std::exception& e) {
    return {name, false, 0.0, tolerance, e.what()};
  }
}

}  // namespace

Fixtures worked_example_fixtures() {
  const double h = std::sqrt(0.5);
  const double t = std::sqrt(2.0);
  Fixtures f;
  f.original = {4,
                {row({1, 0, 1, 0}, {0, 1, 0, 0}), row({1, 1, 0, 1}, {0, 0, 0, 0}),
                 row({0, 1, 0, 0}, {1, 1, 1, 0}), row({0, 0, 0, 0}, {1, 1, 0, 1})}};
  f.H = {4,
         {row({1, 1, 0, 1}, {0, 0, 0, 0}), row({-h, t, -t, h}, {h, -h, h, 0}),
          row({1, 0, 1, 0}, {0, 1, 0, 0}),
          row({-t, h, -std::sqrt(4.5), h}, {h, -t, 0, h})}};
  f.params = {4, 2, 0, 2};
  const double points[][2] = {{1.0, 1.0}, {0.3, -1.7}, {-2.5, 0.4}};
  for (int mode = 1; mode <= 4; ++mode) {
    for (const auto& pt : points) {
      f.syndromes.push_back({mode, pt[0], pt[1], example_syndrome(mode, pt[0], pt[1])});
    }
  }
  return f;
}

Fixtures fixtures_from_json(const Json& j) {
  Fixtures f;
  f.original = parity_check_from_json(j.at("original"));
  f.H = parity_check_from_json(j.at("H"));
  const Json& p = j.at("params");
  f.params = {p.at("n").get<int>(), p.at("k").get<int>(), p.at("l").get<int>(),
              p.at("c").get<int>()};
  for (const Json& s : j.at("syndromes")) {
    SyndromeSample sample{s.at("mode").get<int>(), s.at("p").get<double>(),
                          s.at("x").get<double>(), {}};
    const auto values = s.at("expected").get<std::vector<double>>();
    sample.expected = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    f.syndromes.push_back(std::move(sample));
  }
  return f;
}

Json to_json(const Fixtures& f) {
  Json syndromes = Json::array();
  for (const SyndromeSample& s : f.syndromes) {
    syndromes.push_back({{"mode", s.mode},
                         {"p", s.p},
                         {"x", s.x},
                         {"expected", std::vector<double>(s.expected.data(),
                                                          s.expected.data() + s.expected.size())}});
  }
  return {{"original", to_json(f.original)},
          {"H", to_json(f.H)},
          {"params", to_json(f.params)},
          {"syndromes", std::move(syndromes)}};
}

std::vector<SelftestCheck> run_selftest(const Fixtures& fx) {
  std::vector<SelftestCheck> out;

  out.push_back(guarded("decomposition", 1e-9, [&] {
    const SymplecticDecomposition dec = symplectic_gram_schmidt(fx.original.rows);
    const CodeParameters got = code_parameters(dec);
    SelftestCheck c;
    c.passed = got == fx.params;
    c.deviation = gram_defect(dec);
    c.detail = "c=" + std::to_string(got.c) + " l=" + std::to_string(got.l) +
               " k=" + std::to_string(got.k);
    return c;
  }));

  CodeSpec code;
  bool built = false;
  out.push_back(guarded("code construction", 1e-8, [&] {
    code = build_code(fx.H.rows);
    built = true;
    SelftestCheck c;
    c.passed = code.params == fx.params;
    c.deviation = std::max({parity_map_defect(code), symplectic_defect(code.upsilon.matrix()),
                            code.H_aug.commutation_defect()});
    c.detail = "H upsilon^T = F, upsilon symplectic, H_aug commuting";
    return c;
  }));

  out.push_back(guarded("syndrome tables", 1e-9, [&] {
    if (!built) throw Error("code construction failed");
    SelftestCheck c;
    c.passed = true;
    for (const SyndromeSample& s : fx.syndromes) {
      const Syndrome got =
          syndrome(code, PhaseVector::single_mode(code.params.n, s.mode, s.p, s.x));
      if (got.size() != s.expected.size()) {
        throw DimensionError("syndrome sample length mismatch");
      }
      c.deviation = std::max(c.deviation, (got.values - s.expected).cwiseAbs().maxCoeff());
    }
    c.detail = std::to_string(fx.syndromes.size()) + " samples";
    return c;
  }));

  out.push_back(guarded("single-mode decoding", 1e-9, [&] {
    if (!built) throw Error("code construction failed");
    SelftestCheck c;
    c.passed = true;
    for (const SyndromeSample& s : fx.syndromes) {
      const Correction fix = decode_single_mode(code, Syndrome{s.expected});
      if (fix.mode != s.mode) {
        c.passed = false;
        c.detail = "mode " + std::to_string(s.mode) + " decoded as " +
                   (fix.mode ? std::to_string(*fix.mode) : std::string("none"));
      }
      const double dp = std::abs(fix.u_prime.p(s.mode - 1) - s.p);
      const double dx = std::abs(fix.u_prime.x(s.mode - 1) - s.x);
      c.deviation = std::max({c.deviation, dp / std::max(1.0, std::abs(s.p)),
                              dx / std::max(1.0, std::abs(s.x))});
    }
    return c;
  }));

  out.push_back(guarded("compiler round trip", 1e-8, [&] {
    if (!built) throw Error("code construction failed");
    const QuadAction target = encoder_action(code);
    const Circuit circuit = compile_encoder(code);
    const Matrix diff = circuit_action(circuit).matrix() - target.matrix();
    const double norm_inf = target.matrix().cwiseAbs().rowwise().sum().maxCoeff();
    SelftestCheck c;
    c.passed = true;
    c.deviation = diff.cwiseAbs().rowwise().sum().maxCoeff() / (1.0 + norm_inf);
    c.detail = std::to_string(circuit.gates.size()) + " gates";
    return c;
  }));

  return out;
}

Json to_json(const std::vector<SelftestCheck>& checks) {
  Json items = Json::array();
  bool all = true;
  for (const SelftestCheck& c : checks) {
    all = all && c.passed;
    items.push_back({{"name", c.name},
                     {"passed", c.passed},
                     {"deviation", c.deviation},
                     {"tolerance", c.tolerance},
                     {"detail", c.detail}});
  }
  return {{"passed", all}, {"checks", std::move(items)}};
}

}  // namespace cveacc
