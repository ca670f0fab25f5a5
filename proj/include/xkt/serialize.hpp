#pragma once

// JSON bindings for the domain types and the experiment configuration,
// plus the FNV-1a content hash used for report provenance.

#include "xkt/analytic.hpp"
#include "xkt/currents.hpp"
#include "xkt/grassmann.hpp"
#include "xkt/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xkt {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline json to_json(const PlaneSet& set) {
  json planes = json::array();
  for (const auto& p : set.planes) {
    json frame = json::array();
    for (int r = 0; r < p.frame.rows(); ++r)
      for (int c = 0; c < p.frame.cols(); ++c) frame.push_back(p.frame(r, c));
    planes.push_back({{"frame", frame}});
  }
  json out{{"n", set.n}, {"k", set.k}, {"planes", planes}, {"weights", set.weights}};
  if (set.seed) out["seed"] = *set.seed;
  return out;
}

inline PlaneSet plane_set_from_json(const json& j) {
  PlaneSet set;
  set.n = j.at("n").get<int>();
  set.k = j.at("k").get<int>();
  for (const auto& pj : j.at("planes")) {
    const auto& frame = pj.at("frame");
    if (static_cast<int>(frame.size()) != set.n * set.k)
      throw ConfigError("plane set: frame size mismatch");
    Eigen::MatrixXd f(set.n, set.k);
    int t = 0;
    for (int r = 0; r < set.n; ++r)
      for (int c = 0; c < set.k; ++c) f(r, c) = frame[t++].get<double>();
    set.planes.emplace_back(set.n, set.k, std::move(f));
  }
  set.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("seed")) set.seed = j.at("seed").get<std::uint64_t>();
  set.validate();
  return set;
}

inline json to_json(const DiracCurrent& t) {
  json atoms = json::array();
  for (const auto& a : t.atoms) {
    json pos = json::array(), w = json::array();
    for (int d = 0; d < a.position.size(); ++d) pos.push_back(a.position[d]);
    for (int c = 0; c < a.weight.coeffs.size(); ++c) w.push_back(a.weight.coeffs[c]);
    atoms.push_back({{"position", pos}, {"weight", w}});
  }
  return json{{"type", "dirac"}, {"n", t.dim}, {"m", t.degree}, {"atoms", atoms}};
}

inline json to_json(const PlaneCurrent& t) {
  json atoms = json::array();
  for (const auto& a : t.atoms) {
    json pos = json::array(), w = json::array();
    for (int d = 0; d < a.position.size(); ++d) pos.push_back(a.position[d]);
    for (int c = 0; c < a.weight.coeffs.size(); ++c) w.push_back(a.weight.coeffs[c]);
    atoms.push_back({{"position", pos}, {"weight", w}});
  }
  json frame = json::array();
  for (int r = 0; r < t.plane.frame.rows(); ++r)
    for (int c = 0; c < t.plane.frame.cols(); ++c) frame.push_back(t.plane.frame(r, c));
  return json{{"type", "plane"},
              {"n", t.plane.n},
              {"k", t.plane.k},
              {"m", t.degree},
              {"frame", frame},
              {"atoms", atoms}};
}

inline AnalyticForm form_from_json(const json& j, int dim) {
  try {
    if (j.contains("type")) {
      const std::string type = j.at("type").get<std::string>();
      if (type != "gaussian") throw ConfigError("form: unknown type '" + type + "'");
      std::vector<int> index = j.value("index", std::vector<int>{});
      const double width = j.value("width", 1.0);
      const double scale = j.value("scale", 1.0);
      AnalyticForm f = AnalyticForm::gaussian(dim, index, width, scale);
      if (j.contains("monomial")) {
        const auto& mono = j.at("monomial");
        f.terms[0].poly[0].exponents[mono.at("var").get<int>()] = mono.at("power").get<int>();
      }
      return f;
    }
    AnalyticForm f;
    f.dim = dim;
    f.degree = j.at("degree").get<int>();
    for (const auto& tj : j.at("terms")) {
      AnalyticTerm term;
      term.index.entries = tj.at("index").get<std::vector<int>>();
      term.gaussian_width = tj.value("width", 1.0);
      for (const auto& mj : tj.at("poly")) {
        Monomial mono;
        mono.coeff = mj.at("coeff").get<double>();
        mono.exponents = mj.value("exps", std::vector<int>(dim, 0));
        if (static_cast<int>(mono.exponents.size()) != dim)
          throw ConfigError("form: monomial arity mismatch");
        term.poly.push_back(std::move(mono));
      }
      f.terms.push_back(std::move(term));
    }
    f.validate();
    return f;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("form: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("form: ") + e.what());
  }
}

inline DiracCurrent current_from_json(const json& j, int dim, int degree, int quad_order = 2) {
  try {
    const std::string type = j.value("type", "dirac");
    if (type == "circle") {
      const auto axes = j.value("axes", std::vector<int>{0, 1});
      Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
      if (j.contains("center")) {
        const auto c = j.at("center").get<std::vector<double>>();
        if (static_cast<int>(c.size()) != dim) throw ConfigError("current: bad center");
        for (int d = 0; d < dim; ++d) center[d] = c[d];
      }
      if (degree != 1) throw ConfigError("current: circle requires m = 1");
      const SimplexCurrent circle =
          polygonal_circle(dim, j.value("radius", 1.0), j.value("segments", 512),
                           {axes.at(0), axes.at(1)}, center, j.value("multiplicity", 1.0));
      return simplex_to_dirac(circle, j.value("order", quad_order));
    }
    if (type == "simplex") {
      SimplexCurrent t;
      t.dim = dim;
      t.degree = degree;
      for (const auto& sj : j.at("simplices")) {
        SimplexCurrent::Simplex s;
        const auto verts = sj.at("vertices").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(verts.size()) != degree + 1) throw ConfigError("current: need m+1 vertices");
        s.vertices = Eigen::MatrixXd(degree + 1, dim);
        for (int v = 0; v <= degree; ++v) {
          if (static_cast<int>(verts[v].size()) != dim) throw ConfigError("current: bad vertex");
          for (int d = 0; d < dim; ++d) s.vertices(v, d) = verts[v][d];
        }
        s.multiplicity = sj.value("multiplicity", 1.0);
        t.simplices.push_back(std::move(s));
      }
      return simplex_to_dirac(t, j.value("order", quad_order));
    }
    if (type == "dirac") {
      DiracCurrent t;
      t.dim = dim;
      t.degree = degree;
      for (const auto& aj : j.at("atoms")) {
        DiracCurrent::Atom atom;
        const auto pos = aj.at("position").get<std::vector<double>>();
        const auto w = aj.at("weight").get<std::vector<double>>();
        if (static_cast<int>(pos.size()) != dim) throw ConfigError("current: bad atom position");
        atom.position = Eigen::VectorXd(dim);
        for (int d = 0; d < dim; ++d) atom.position[d] = pos[d];
        atom.weight = MVector(dim, degree);
        if (static_cast<int>(w.size()) != atom.weight.coeffs.size())
          throw ConfigError("current: bad atom weight length");
        for (size_t c = 0; c < w.size(); ++c) atom.weight.coeffs[static_cast<long>(c)] = w[c];
        t.atoms.push_back(std::move(atom));
      }
      t.validate();
      return t;
    }
    throw ConfigError("current: unknown type '" + type + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("current: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("current: ") + e.what());
  }
}

inline json to_json(const ExperimentConfig& cfg) {
  return json{{"n", cfg.n},
              {"k", cfg.k},
              {"m", cfg.m},
              {"grid",
               {{"L", cfg.L},
                {"N", cfg.N},
                {"N_k", cfg.N_k},
                {"N_perp", cfg.N_perp},
                {"padding", cfg.padding}}},
              {"planes",
               {{"mode", cfg.planes.mode}, {"count", cfg.planes.count}, {"seed", cfg.planes.seed}}},
              {"threads", cfg.threads}};
}

inline ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  try {
    cfg.n = j.at("n").get<int>();
    cfg.k = j.at("k").get<int>();
    cfg.m = j.at("m").get<int>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      cfg.L = g.value("L", cfg.L);
      cfg.N = g.value("N", cfg.N);
      cfg.N_k = g.value("N_k", cfg.N_k);
      cfg.N_perp = g.value("N_perp", cfg.N_perp);
      cfg.padding = g.value("padding", cfg.padding);
    }
    if (j.contains("planes")) {
      const auto& p = j.at("planes");
      cfg.planes.mode = p.value("mode", cfg.planes.mode);
      cfg.planes.count = p.value("count", cfg.planes.count);
      cfg.planes.seed = p.value("seed", cfg.planes.seed);
    }
    cfg.threads = j.value("threads", cfg.threads);
    cfg.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a_hash(to_json(cfg).dump());
}

}  // namespace xkt
