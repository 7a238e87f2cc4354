#include "eigensel/serialize.hpp"

#include <fstream>

#include "eigensel/matrix_market.hpp"

namespace eigensel {

namespace fs = std::filesystem;

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) {
    return j.get<double>();
  }
  if (!j.is_array() || j.size() != 2) {
    throw IoError("complex numbers are stored as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back(to_json(v(i)));
  }
  return out;
}

CVector vector_from_json(const Json& j) {
  CVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = complex_from_json(j[i]);
  }
  return v;
}

Json eigenvalue_json(const EigenTriplet& t) {
  if (t.infinite) {
    return Json{{"inf", true}};
  }
  return to_json(t.value);
}

Json to_json(const EigenTriplet& t) {
  Json j;
  j["value"] = eigenvalue_json(t);
  j["alpha"] = to_json(t.point.alpha);
  j["beta"] = to_json(t.point.beta);
  j["residual"] = t.residual;
  j["cond"] = t.cond ? Json(*t.cond) : Json(nullptr);
  j["iteration"] = t.iteration;
  j["denom"] = to_json(t.denom);
  j["right"] = to_json(t.right);
  j["left"] = to_json(t.left);
  return j;
}

EigenTriplet triplet_from_json(const Json& j) {
  EigenTriplet t;
  const Json& v = j.at("value");
  t.infinite = v.is_object() && v.value("inf", false);
  if (j.contains("alpha") && j.contains("beta")) {
    t.point = {complex_from_json(j["alpha"]), complex_from_json(j["beta"])};
  } else if (!t.infinite) {
    t.point = normalized_point(complex_from_json(v), 1.0);
  } else {
    t.point = infinity_point();
  }
  if (!t.infinite) {
    t.value = complex_from_json(v);
  }
  t.residual = j.value("residual", 0.0);
  if (j.contains("cond") && !j["cond"].is_null()) {
    t.cond = j["cond"].get<double>();
  }
  t.iteration = j.value("iteration", -1);
  if (j.contains("denom")) {
    t.denom = complex_from_json(j["denom"]);
  }
  if (j.contains("right")) {
    t.right = vector_from_json(j["right"]);
  }
  if (j.contains("left")) {
    t.left = vector_from_json(j["left"]);
  }
  return t;
}

Json to_json(const MepTriplet& t) {
  Json j;
  j["value"] = Json::array();
  for (Complex z : t.value) {
    j["value"].push_back(to_json(z));
  }
  j["residual"] = t.residual;
  j["iteration"] = t.iteration;
  j["denom"] = to_json(t.denom);
  j["right"] = Json::array();
  j["left"] = Json::array();
  for (const auto& x : t.right) {
    j["right"].push_back(to_json(x));
  }
  for (const auto& y : t.left) {
    j["left"].push_back(to_json(y));
  }
  return j;
}

MepTriplet mep_triplet_from_json(const Json& j) {
  MepTriplet t;
  for (const auto& z : j.at("value")) {
    t.value.push_back(complex_from_json(z));
  }
  t.residual = j.value("residual", 0.0);
  t.iteration = j.value("iteration", -1);
  if (j.contains("denom")) {
    t.denom = complex_from_json(j["denom"]);
  }
  for (const auto& x : j.value("right", Json::array())) {
    t.right.push_back(vector_from_json(x));
  }
  for (const auto& y : j.value("left", Json::array())) {
    t.left.push_back(vector_from_json(y));
  }
  return t;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  os << j.dump(2) << '\n';
  if (!os) {
    throw IoError("write failed for " + path.string());
  }
}

Json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

fs::path save_problem(const fs::path& dir, const Problem& problem, const Json& generator) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  Json manifest;
  manifest["generator"] = generator;
  if (const auto* poly = std::get_if<PolyProblem>(&problem)) {
    manifest["kind"] = "pep";
    manifest["coefficients"] = Json::array();
    for (int i = 0; i <= poly->degree(); ++i) {
      const std::string name = "A" + std::to_string(i) + ".mtx";
      write_matrix_market(dir / name, poly->coeff(i));
      manifest["coefficients"].push_back(name);
    }
  } else {
    const auto& mep = std::get<LinearMep>(problem);
    static const char* letters[] = {"B", "C", "D"};
    manifest["kind"] = "mep";
    manifest["equations"] = Json::array();
    for (int i = 0; i < mep.k(); ++i) {
      Json eq = Json::array();
      const std::string suffix = std::to_string(i + 1) + ".mtx";
      write_matrix_market(dir / ("A" + suffix), Coefficient(mep.a(i)));
      eq.push_back("A" + suffix);
      for (int j = 0; j < mep.k(); ++j) {
        const std::string name = letters[j] + suffix;
        write_matrix_market(dir / name, Coefficient(mep.c(i, j)));
        eq.push_back(name);
      }
      manifest["equations"].push_back(eq);
    }
  }
  const fs::path path = dir / "problem.json";
  write_json(path, manifest);
  return path;
}

Problem load_problem(const fs::path& manifest) {
  const Json j = read_json(manifest);
  const fs::path base = manifest.parent_path();
  const std::string kind = j.value("kind", "");
  auto resolve = [&](const Json& name) {
    const fs::path p(name.get<std::string>());
    return p.is_absolute() ? p : base / p;
  };
  try {
    if (kind == "pep") {
      std::vector<Coefficient> coeffs;
      for (const auto& name : j.at("coefficients")) {
        coeffs.push_back(read_matrix_market(resolve(name)));
      }
      return PolyProblem(std::move(coeffs));
    }
    if (kind == "mep") {
      std::vector<CMatrix> a;
      std::vector<std::vector<CMatrix>> c;
      for (const auto& eq : j.at("equations")) {
        if (eq.size() < 2) {
          throw InvalidArgument("each equation lists A_i followed by its parameter matrices");
        }
        a.push_back(read_matrix_market(resolve(eq[0])).to_dense());
        c.emplace_back();
        for (std::size_t q = 1; q < eq.size(); ++q) {
          c.back().push_back(read_matrix_market(resolve(eq[q])).to_dense());
        }
      }
      return LinearMep(std::move(a), std::move(c));
    }
  } catch (const Json::exception& e) {
    throw IoError(manifest.string() + ": " + e.what());
  }
  throw IoError(manifest.string() + ": unknown problem kind '" + kind + "'");
}

Json load_generator(const fs::path& manifest) {
  const Json j = read_json(manifest);
  return j.contains("generator") ? j["generator"] : Json(nullptr);
}

}  // namespace eigensel
