#include <filesystem>

#include "eigensel/cli.hpp"

namespace eigensel::cli {

namespace fs = std::filesystem;

namespace {

Json complex_list(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (Complex z : zs) {
    out.push_back(to_json(z));
  }
  return out;
}

std::string backend_name(kernels::Backend b) {
  return b == kernels::Backend::parallel ? "parallel" : "serial";
}

}  // namespace

Json to_json(const RunManifest& m) {
  Json j;
  j["problem"] = m.problem.string();
  j["out"] = m.out.string();
  j["seed"] = m.seed;
  const JdOptions& o = m.jd;
  j["jd"] = {{"target", to_json(o.target)},
             {"num_pairs", o.num_pairs},
             {"tol", o.tol},
             {"mindim", o.mindim},
             {"maxdim", o.maxdim},
             {"max_outer", o.max_outer},
             {"inner_steps", o.inner_steps},
             {"eta_sel", o.eta_sel},
             {"mode", o.mode == SelectionMode::homogeneous ? "homogeneous" : "standard"},
             {"extraction", o.extraction == Extraction::gal1 ? "gal1" : "ritz"},
             {"precondition", o.precondition},
             {"backend", backend_name(o.backend)}};
  const MepOptions& p = m.mep;
  j["mep"] = {{"target", complex_list(p.target)},
              {"num_pairs", p.num_pairs},
              {"tol", p.tol},
              {"mindim", p.mindim},
              {"maxdim", p.maxdim},
              {"max_outer", p.max_outer},
              {"inner_steps", p.inner_steps},
              {"eta_sel", p.eta_sel},
              {"strict", p.strict},
              {"precondition", p.precondition},
              {"backend", backend_name(p.backend)}};
  return j;
}

RunManifest run_manifest_from_json(const Json& j) {
  RunManifest m;
  try {
    m.problem = j.at("problem").get<std::string>();
    m.out = j.value("out", std::string("."));
    m.seed = j.value("seed", std::uint64_t{1});
    m.jd.seed = m.seed;
    m.mep.seed = m.seed;
    if (j.contains("jd")) {
      const Json& o = j["jd"];
      if (o.contains("target")) {
        m.jd.target = complex_from_json(o["target"]);
      }
      m.jd.num_pairs = o.value("num_pairs", m.jd.num_pairs);
      m.jd.tol = o.value("tol", m.jd.tol);
      m.jd.mindim = o.value("mindim", m.jd.mindim);
      m.jd.maxdim = o.value("maxdim", m.jd.maxdim);
      m.jd.max_outer = o.value("max_outer", m.jd.max_outer);
      m.jd.inner_steps = o.value("inner_steps", m.jd.inner_steps);
      m.jd.eta_sel = o.value("eta_sel", m.jd.eta_sel);
      m.jd.mode = o.value("mode", std::string("standard")) == "homogeneous" ? SelectionMode::homogeneous
                                                                           : SelectionMode::standard;
      m.jd.extraction = o.value("extraction", std::string("ritz")) == "gal1" ? Extraction::gal1
                                                                            : Extraction::ritz;
      m.jd.precondition = o.value("precondition", true);
      m.jd.backend = o.value("backend", std::string("parallel")) == "serial"
                         ? kernels::Backend::serial
                         : kernels::default_backend();
    }
    if (j.contains("mep")) {
      const Json& p = j["mep"];
      m.mep.target.clear();
      for (const auto& z : p.value("target", Json::array())) {
        m.mep.target.push_back(complex_from_json(z));
      }
      m.mep.num_pairs = p.value("num_pairs", m.mep.num_pairs);
      m.mep.tol = p.value("tol", m.mep.tol);
      m.mep.mindim = p.value("mindim", m.mep.mindim);
      m.mep.maxdim = p.value("maxdim", m.mep.maxdim);
      m.mep.max_outer = p.value("max_outer", m.mep.max_outer);
      m.mep.inner_steps = p.value("inner_steps", m.mep.inner_steps);
      m.mep.eta_sel = p.value("eta_sel", m.mep.eta_sel);
      m.mep.strict = p.value("strict", false);
      m.mep.precondition = p.value("precondition", true);
      m.mep.backend = p.value("backend", std::string("parallel")) == "serial"
                          ? kernels::Backend::serial
                          : kernels::default_backend();
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("run manifest: ") + e.what());
  }
  return m;
}

void validate(const RunManifest& m) {
  if (!fs::exists(m.problem)) {
    throw IoError("problem manifest " + m.problem.string() + " does not exist");
  }
  auto check = [](bool ok, const char* what) {
    if (!ok) {
      throw InvalidArgument(what);
    }
  };
  const JdOptions& o = m.jd;
  check(o.num_pairs >= 1, "num_pairs must be positive");
  check(o.tol > 0.0, "tol must be positive");
  check(o.eta_sel > 0.0 && o.eta_sel < 1.0, "eta must lie in (0, 1)");
  check(o.mindim >= 1 && o.mindim < o.maxdim, "need 1 <= mindim < maxdim");
  check(o.max_outer >= 1 && o.inner_steps >= 0, "max_outer >= 1 and inner_steps >= 0 required");
}

}  // namespace eigensel::cli
