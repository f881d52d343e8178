#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qebt/canonical.hpp"
#include "qebt/channel.hpp"
#include "qebt/cp.hpp"
#include "qebt/decompose.hpp"
#include "qebt/ebt.hpp"
#include "qebt/errors.hpp"
#include "qebt/holevo.hpp"
#include "qebt/json_io.hpp"
#include "qebt/region.hpp"
#include "qebt/sampling.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

double classification_tol() {
  if (const char* env = std::getenv("QEBT_TOL")) {
    const double value = std::strtod(env, nullptr);
    if (value > 0) return value;
  }
  return qebt::kDefaultTol;
}

qebt::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qebt::InvalidChannel("cannot open " + path);
  qebt::Json j;
  in >> j;
  return j;
}

qebt::PauliTransferMatrix load_channel(const std::string& path) {
  return qebt::channel_from_json(load_json(path));
}

Eigen::Vector3d parse_triple(const std::string& text) {
  Eigen::Vector3d v;
  std::stringstream stream(text);
  std::string part;
  for (int k = 0; k < 3; ++k) {
    if (!std::getline(stream, part, ',')) {
      throw qebt::InvalidChannel("expected three comma-separated numbers: " +
                                 text);
    }
    v(k) = std::stod(part);
  }
  return v;
}

void emit(const qebt::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << qebt::dump17(j) << "\n";
  } else {
    std::ofstream out(out_path);
    out << qebt::dump17(j) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

qebt::Json classify_json(const qebt::PauliTransferMatrix& channel,
                         double tol) {
  using qebt::Json;
  using qebt::Verdict;

  const qebt::CanonicalForm form = qebt::to_canonical(channel);
  const qebt::PsdReport cp = qebt::choi_psd(channel, tol);

  Json j;
  j["cp"] = cp.is_psd;
  j["cp_verdict"] = qebt::to_string(cp.verdict);
  j["min_choi_eig"] = cp.min_eig;

  const double edge = std::abs(form.t(2)) + std::abs(form.lambda(2));
  if (edge < 1.0) {
    const qebt::ContractionData data = qebt::contraction_matrix(form);
    j["m11"] = data.m11;
    j["m22"] = data.m22;
    j["det_m"] = data.det_m();
  } else {
    j["m11"] = nullptr;
    j["m22"] = nullptr;
    j["det_m"] = nullptr;
  }

  const qebt::SumLambdaReport sum = qebt::ebt_sum_lambda(form, tol);
  Json criteria;
  Json geometry = nullptr;
  bool ebt = false;
  std::string ebt_verdict = "no";
  if (cp.is_psd) {
    const Verdict sign_change = qebt::ebt_sign_change(form, tol);
    criteria["sign_change"] = qebt::to_string(sign_change);
    criteria["ppt"] = qebt::to_string(qebt::ebt_ppt(channel, tol));
    criteria["choi_bound"] = qebt::to_string(qebt::ebt_choi_bound(channel, tol));
    ebt = sign_change != Verdict::No;
    ebt_verdict = qebt::to_string(sign_change);

    const qebt::GeometryReport report = qebt::classify_geometry(form, 1e-10, tol);
    geometry = Json();
    geometry["image"] = qebt::to_string(report.image);
    geometry["zero_count"] = report.zero_count;
    geometry["is_cq"] = report.is_cq;
    geometry["is_qc"] = report.is_qc;
  } else {
    criteria["sign_change"] = "skipped";
    criteria["ppt"] = "skipped";
    criteria["choi_bound"] = "skipped";
  }
  Json sum_lambda;
  sum_lambda["sum"] = sum.sum;
  sum_lambda["necessary_pass"] = sum.necessary_pass;
  sum_lambda["decisive"] = sum.unital;
  sum_lambda["verdict"] =
      sum.unital ? qebt::to_string(sum.unital_verdict) : "necessary_only";
  criteria["sum_lambda"] = sum_lambda;

  j["ebt"] = ebt;
  j["ebt_verdict"] = ebt_verdict;
  j["criteria"] = criteria;
  j["geometry"] = geometry;
  Json canonical;
  canonical["t"] = qebt::vector_to_json(form.t);
  canonical["lambda"] = qebt::vector_to_json(form.lambda);
  j["canonical"] = canonical;
  return j;
}

std::string scan_to_csv(const qebt::ScanResult& scan) {
  std::string csv = "lp,lm,m11,m22,detm,region,cp,ebt\n";
  for (const qebt::RegionSample& s : scan.samples) {
    csv += qebt::format17(s.lambda_plus) + "," + qebt::format17(s.lambda_minus) +
           "," + qebt::format17(s.m11) + "," + qebt::format17(s.m22) + "," +
           qebt::format17(s.det_m) + "," + s.region() + "," +
           (s.cp ? "1" : "0") + "," + (s.ebt ? "1" : "0") + "\n";
  }
  return csv;
}

std::string polyline_to_csv(const std::vector<Eigen::Vector2d>& polyline) {
  std::string csv = "lp,lm\n";
  for (const Eigen::Vector2d& p : polyline) {
    csv += qebt::format17(p.x()) + "," + qebt::format17(p.y()) + "\n";
  }
  return csv;
}

qebt::Json polytopes_to_json(const std::vector<qebt::Polytope>& polytopes) {
  qebt::Json list = qebt::Json::array();
  for (const qebt::Polytope& p : polytopes) {
    qebt::Json entry;
    entry["name"] = p.name;
    qebt::Json vertices = qebt::Json::array();
    for (const Eigen::Vector3i& v : p.vertices) {
      vertices.push_back(qebt::Json::array({v(0), v(1), v(2)}));
    }
    qebt::Json facets = qebt::Json::array();
    for (const qebt::PolytopeFacet& f : p.facets) {
      qebt::Json facet;
      facet["normal"] =
          qebt::Json::array({f.normal(0), f.normal(1), f.normal(2)});
      facet["rhs"] = f.rhs;
      facets.push_back(facet);
    }
    entry["vertices"] = vertices;
    entry["facets"] = facets;
    list.push_back(entry);
  }
  qebt::Json j;
  j["polytopes"] = list;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qebt: classify, construct and decompose qubit channels"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--jobs may follow the subcommand

  const double tol = classification_tol();
  std::uint64_t seed = 42;
  int jobs = 0;
  app.add_option("--seed", seed, "RNG seed for sampling subcommands");
  app.add_option("--jobs", jobs, "worker threads for scans (default: cores)");

  std::string channel_path, ensemble_path, out_path;

  auto* classify = app.add_subcommand("classify", "classify a channel");
  classify->add_option("channel", channel_path, "channel JSON file")
      ->required();

  auto* canonical = app.add_subcommand("canonical", "print the canonical form");
  canonical->add_option("channel", channel_path, "channel JSON file")
      ->required();

  auto* choi = app.add_subcommand("choi", "print the Choi matrix");
  choi->add_option("channel", channel_path, "channel JSON file")->required();

  std::vector<double> cq_args, qc_args;
  auto* holevo_build =
      app.add_subcommand("holevo-build", "build a CQ or QC ensemble");
  holevo_build->add_option("--cq", cq_args, "t1 t2 t3 lambda3")->expected(4);
  holevo_build->add_option("--qc", qc_args, "u0 u1 u2 u3")->expected(4);

  auto* holevo_verify = app.add_subcommand(
      "holevo-verify", "check an ensemble against a channel");
  holevo_verify->add_option("ensemble", ensemble_path, "ensemble JSON file")
      ->required();
  holevo_verify->add_option("channel", channel_path, "channel JSON file")
      ->required();

  bool constructive_only = false;
  int candidates = 2000;
  double fit_tol = 1e-8;
  auto* decompose =
      app.add_subcommand("decompose", "convex CQ decomposition");
  decompose->add_option("channel", channel_path, "channel JSON file")
      ->required();
  decompose->add_flag("--constructive-only", constructive_only,
                      "fail instead of falling back to the numeric fit");
  decompose->add_option("--candidates", candidates, "candidate pool size");
  decompose->add_option("--tol", fit_tol, "fit residual tolerance");

  std::string t_text = "0,0,0", polytope_kind;
  double lambda3 = 0.0, range = 2.0;
  int resolution = 400, n_rays = 720;
  bool do_scan = false, do_boundary = false, do_lens = false;
  auto* region = app.add_subcommand("region", "parameter-plane datasets");
  region->add_option("--t", t_text, "translation t1,t2,t3");
  region->add_option("--l3", lambda3, "lambda3");
  region->add_flag("--scan", do_scan, "dense grid scan (CSV)");
  region->add_flag("--boundary", do_boundary, "CP boundary polyline (CSV)");
  region->add_flag("--lens", do_lens, "EBT lens polyline (CSV)");
  region->add_option("--polytope", polytope_kind,
                     "tetrahedron|inverted|octahedron|corner_tetrahedra");
  region->add_option("--grid", resolution, "scan resolution");
  region->add_option("--rays", n_rays, "boundary rays");
  region->add_option("--range", range, "scan half-width");
  region->add_option("-o,--output", out_path, "output file (default stdout)");

  int selftest_samples = 10000;
  auto* selftest =
      app.add_subcommand("selftest", "four-criterion agreement suite");
  selftest->add_option("--samples", selftest_samples, "channels to draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) {
      emit(classify_json(load_channel(channel_path), tol), "");
    } else if (canonical->parsed()) {
      emit(qebt::canonical_to_json(qebt::to_canonical(load_channel(channel_path))),
           "");
    } else if (choi->parsed()) {
      const qebt::PauliTransferMatrix channel = load_channel(channel_path);
      const qebt::ChoiMatrix matrix = qebt::choi_of(channel);
      qebt::Json j = qebt::choi_to_json(matrix);
      j["min_eig"] = qebt::min_choi_eig(channel);
      j["max_eig"] = qebt::max_choi_eig(channel);
      emit(j, "");
    } else if (holevo_build->parsed()) {
      if (cq_args.empty() == qc_args.empty()) {
        std::cerr << "holevo-build: pass exactly one of --cq or --qc\n";
        return kExitUsage;
      }
      qebt::Json j;
      if (!cq_args.empty()) {
        const qebt::HolevoEnsemble ensemble = qebt::build_cq(
            {cq_args[0], cq_args[1], cq_args[2]}, cq_args[3]);
        j = qebt::ensemble_to_json(ensemble);
      } else {
        const qebt::QcBuild built =
            qebt::build_qc(qc_args[0], {qc_args[1], qc_args[2], qc_args[3]});
        j = qebt::ensemble_to_json(built.ensemble);
        j["rotation"] = qebt::matrix_to_json(built.rotation);
      }
      emit(j, "");
    } else if (holevo_verify->parsed()) {
      const qebt::HolevoEnsemble ensemble =
          qebt::ensemble_from_json(load_json(ensemble_path));
      const qebt::PauliTransferMatrix channel = load_channel(channel_path);
      qebt::Json j;
      const bool valid = qebt::verify_ensemble(ensemble, channel);
      j["valid"] = valid;
      emit(j, "");
    } else if (decompose->parsed()) {
      const qebt::PauliTransferMatrix channel = load_channel(channel_path);
      const qebt::CanonicalForm form = qebt::to_canonical(channel);
      qebt::CqDecomposition result;
      std::string method;
      auto constructive = qebt::decompose_constructive(form, tol);
      if (constructive) {
        result = *constructive;
        method = "constructive";
      } else if (constructive_only) {
        throw qebt::FitFailed("constructive decomposition does not cover this channel");
      } else {
        result = qebt::decompose_numeric(form, candidates, fit_tol, seed);
        method = "numeric";
      }
      result = qebt::decomposition_in_original_frame(result, form);
      result.residual = (result.mixture() - channel.entries).norm();
      qebt::Json j = qebt::decomposition_to_json(result);
      j["method"] = method;
      emit(j, "");
    } else if (region->parsed()) {
      if (!polytope_kind.empty()) {
        qebt::PolytopeKind kind;
        if (polytope_kind == "tetrahedron") {
          kind = qebt::PolytopeKind::Tetrahedron;
        } else if (polytope_kind == "inverted") {
          kind = qebt::PolytopeKind::Inverted;
        } else if (polytope_kind == "octahedron") {
          kind = qebt::PolytopeKind::Octahedron;
        } else if (polytope_kind == "corner_tetrahedra") {
          kind = qebt::PolytopeKind::CornerTetrahedra;
        } else {
          std::cerr << "region: unknown polytope kind " << polytope_kind
                    << "\n";
          return kExitUsage;
        }
        emit(polytopes_to_json(qebt::polytope_data(kind)), out_path);
      } else if (do_scan) {
        const qebt::ScanResult scan = qebt::scan_plane(
            parse_triple(t_text), lambda3, resolution, range, seed, jobs);
        emit_text(scan_to_csv(scan), out_path);
        if (scan.cross_mismatches > 0) {
          std::cerr << "scan: " << scan.cross_mismatches
                    << " Choi cross-check mismatches\n";
          return kExitNumerical;
        }
      } else if (do_boundary) {
        emit_text(polyline_to_csv(qebt::trace_boundary(parse_triple(t_text),
                                                       lambda3, n_rays, jobs)),
                  out_path);
      } else if (do_lens) {
        emit_text(polyline_to_csv(qebt::ebt_lens(parse_triple(t_text), lambda3,
                                                 n_rays, jobs)),
                  out_path);
      } else {
        std::cerr << "region: pass one of --scan, --boundary, --lens, "
                     "--polytope\n";
        return kExitUsage;
      }
    } else if (selftest->parsed()) {
      const qebt::AgreementStats stats =
          qebt::run_agreement_suite(selftest_samples, seed, tol, 1e-8, jobs);
      const bool pass = stats.contradictions == 0;
      qebt::Json j;
      j["samples"] = stats.drawn;
      j["kept"] = stats.kept;
      j["agree"] = stats.agree;
      j["contradictions"] = stats.contradictions;
      j["boundaries"] = stats.boundaries;
      j["elapsed_seconds"] = stats.elapsed_seconds;
      j["pass"] = pass;
      emit(j, "");
      if (!pass) return kExitNumerical;
    }
  } catch (const qebt::FitFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qebt::NotCP& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qebt::NotEBT& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qebt::OriginNotCP& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qebt::DegenerateEdge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qebt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
