#include "isochrone/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "isochrone/analysis.hpp"
#include "isochrone/dynamics.hpp"
#include "isochrone/elliptic.hpp"
#include "isochrone/error.hpp"
#include "isochrone/format.hpp"
#include "isochrone/quadrature.hpp"
#include "isochrone/reduction.hpp"
#include "isochrone/verify.hpp"

namespace isochrone::cli {

namespace {

struct CoeffSource {
  std::vector<double> coeffs;
  std::string preset;
};

void add_coeff_source(CLI::App* cmd, CoeffSource& src) {
  auto* c = cmd->add_option("--coeffs", src.coeffs, "a0,a1,...,an of f(x) = sum a_i x^i")->delimiter(',');
  auto* p = cmd->add_option("--paper-example", src.preset, "named coefficient set: 1, 2, 3, 3b, 1c, 2c, 3c, 3bc");
  c->excludes(p);
  p->excludes(c);
}

PerturbationSpec resolve(const CoeffSource& src, std::optional<double> epsilon) {
  PerturbationSpec spec;
  if (!src.preset.empty()) {
    spec = analysis::preset(src.preset);
  } else if (!src.coeffs.empty()) {
    spec.a = src.coeffs;
  } else {
    throw CLI::ValidationError("coefficients", "one of --coeffs or --paper-example is required");
  }
  if (epsilon) spec.epsilon = *epsilon;
  return spec;
}

Json spec_json(const PerturbationSpec& spec) {
  Json a = Json::array();
  for (double c : spec.a) a.push_back(format_real(c));
  return Json{{"n", spec.degree()}, {"coeffs", std::move(a)}, {"epsilon", format_real(spec.epsilon)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError(Module::cli, "cannot open '" + path + "' for writing");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abelian integral reduction, zero counting and limit-cycle simulation for a cubic isochronous centre"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");  // -h would collide with --h
  std::string out_path;
  std::string format = "json";
  app.add_option("--out", out_path, "write the payload to this file instead of stdout");
  app.add_option("--format", format, "json or csv, where the subcommand offers both")
      ->check(CLI::IsMember({"json", "csv"}));

  // reduce
  auto* reduce = app.add_subcommand("reduce", "reduce I_{i,j} onto the generator basis (exact)");
  int ri = 0;
  int rj = 1;
  std::string form = "i03";
  reduce->add_option("--i", ri, "first index")->required();
  reduce->add_option("--j", rj, "second index")->required();
  reduce->add_option("--form", form, "fourth basis generator: i03 or i31")->check(CLI::IsMember({"i03", "i31"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "I_{i,j}(h) by direct quadrature over the level curve (CSV)");
  int oi = 0;
  int oj = 1;
  double oh = 0.0;
  double otol = quadrature::kDefaultRelTol;
  oracle->add_option("--i", oi)->required();
  oracle->add_option("--j", oj)->required();
  oracle->add_option("--h", oh)->required();
  oracle->add_option("--tol", otol, "relative tolerance");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate I at a level h or a point u");
  CoeffSource eval_src;
  add_coeff_source(eval, eval_src);
  std::optional<double> eh;
  std::optional<double> eu;
  auto* eh_opt = eval->add_option("--h", eh, "energy level h > 0");
  auto* eu_opt = eval->add_option("--u", eu, "u in (0,1)");
  eh_opt->excludes(eu_opt);
  eu_opt->excludes(eh_opt);

  // zeros
  auto* zeros = app.add_subcommand("zeros", "locate zeros of I(u) on (0,1) with multiplicities");
  CoeffSource zeros_src;
  add_coeff_source(zeros, zeros_src);
  analysis::ZeroOptions zopts;
  std::string samples_path;
  zeros->add_option("--grid", zopts.grid, "scan points");
  zeros->add_option("--tol", zopts.tol, "root bracket width");
  zeros->add_option("--delta", zopts.delta, "scan [delta, 1-delta]");
  zeros->add_option("--samples", samples_path, "also write the scan as CSV u,I");

  // bound
  auto* bound = app.add_subcommand("bound", "upper bound on the number of zeros for degree n");
  int bn = 0;
  bound->add_option("--n", bn)->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "integrate the perturbed flow; return map and cycle search");
  CoeffSource sim_src;
  add_coeff_source(simulate, sim_src);
  std::optional<double> seps;
  std::optional<double> sx0;
  std::optional<double> su0;
  dynamics::OrbitOptions oopts;
  dynamics::CycleSearch search;
  bool detect = false;
  std::string trajectory_path;
  simulate->add_option("--eps", seps, "perturbation size (presets default to 1e-3)");
  auto* x0_opt = simulate->add_option("--x0", sx0, "start at (x0, 0), -1 < x0 < 0");
  auto* u0_opt = simulate->add_option("--u0", su0, "start at (-u0, 0)");
  x0_opt->excludes(u0_opt);
  u0_opt->excludes(x0_opt);
  simulate->add_option("--tol", oopts.rel_tol, "integrator relative tolerance");
  simulate->add_option("--crossings", oopts.crossings, "section crossings to follow");
  simulate->add_option("--max-time", oopts.max_time, "give up after this time");
  simulate->add_flag("--detect", detect, "search the annulus for limit cycles");
  simulate->add_option("--u-min", search.u_min);
  simulate->add_option("--u-max", search.u_max);
  simulate->add_option("--search-grid", search.grid);
  simulate->add_option("--trajectory", trajectory_path, "write the trajectory as CSV t,x,y,H");

  // verify
  auto* verify = app.add_subcommand("verify", "run the cross-validation suite and report pass/fail");
  std::vector<std::string> only;
  verify->add_option("--only", only, "criterion ids to run")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return Exit::usage;
  }

  std::ostringstream payload;
  int status = Exit::ok;
  try {
    if (*reduce) {
      const auto f = form == "i31" ? reduction::BasisForm::with_i31 : reduction::BasisForm::with_i03;
      const auto c = reduction::reduce_generator(ri, rj, f);
      Json j{{"i", ri}, {"j", rj}};
      j.update(reduction::to_json(c, f));
      payload << dump(j);
    } else if (*oracle) {
      const auto r = quadrature::quad_Iij(oi, oj, oh, otol);
      payload << "i,j,h,value,err_estimate\n"
              << oi << ',' << oj << ',' << format_real(oh) << ',' << format_real(r.value) << ','
              << format_real(r.error) << "\n";
    } else if (*eval) {
      const auto spec = resolve(eval_src, std::nullopt);
      if (!eh && !eu) throw CLI::ValidationError("eval", "one of --h or --u is required");
      const auto basis = reduction::assemble_I(spec);
      const double v = eh ? elliptic::eval_I_h(basis, *eh) : analysis::eval_I_u(spec, *eu);
      payload << format_real(v) << "\n";
    } else if (*zeros) {
      const auto spec = resolve(zeros_src, std::nullopt);
      const auto report = analysis::find_zeros(spec, zopts);
      std::ostringstream csv;
      if (format == "csv" || !samples_path.empty()) {
        csv << "u,I\n";
        for (int k = 0; k < zopts.grid; ++k) {
          const double u = zopts.delta + (1.0 - 2.0 * zopts.delta) * k / (zopts.grid - 1);
          csv << format_real(u) << ',' << format_real(analysis::eval_I_u(spec, u)) << "\n";
        }
      }
      if (!samples_path.empty()) write_file(samples_path, csv.str());
      if (format == "csv") {
        payload << csv.str();
      } else {
        Json j{{"spec", spec_json(spec)}};
        j.update(analysis::to_json(report));
        payload << dump(j);
      }
    } else if (*bound) {
      const auto acc = analysis::zero_bound_accounting(bn);
      payload << acc.bound << "\n" << analysis::to_json(acc).dump() << "\n";
    } else if (*simulate) {
      const auto spec = resolve(sim_src, seps);
      Json j{{"spec", spec_json(spec)}};
      std::ostringstream csv;
      if (sx0 || su0) {
        const double x0 = sx0 ? *sx0 : -*su0;
        auto o = oopts;
        o.record = true;
        const auto orbit = dynamics::integrate_orbit({x0, 0.0, 0.0}, spec, o);
        csv << "t,x,y,H\n";
        for (const auto& s : orbit.trajectory) {
          csv << format_real(s.t) << ',' << format_real(s.x) << ',' << format_real(s.y) << ','
              << (s.x == 0.0 ? std::string("nan") : format_real(dynamics::first_integral(s))) << "\n";
        }
        Json crossings = Json::array();
        for (const auto& c : orbit.crossings) {
          crossings.push_back({{"t", format_real(c.t)}, {"x", format_real(c.x)}});
        }
        Json oj{{"x0", format_real(x0)},
                {"status", dynamics::status_name(orbit.status)},
                {"steps", orbit.trajectory.size() - 1},
                {"crossings", std::move(crossings)}};
        if (!orbit.crossings.empty()) {
          oj["displacement"] = format_real(orbit.crossings.front().x - x0);
          oj["return_time"] = format_real(orbit.crossings.front().t);
        }
        j["orbit"] = std::move(oj);
      }
      if (detect) {
        Json cycles = Json::array();
        for (const auto& c : dynamics::detect_limit_cycles(spec, search, oopts)) cycles.push_back(dynamics::to_json(c));
        j["cycles"] = std::move(cycles);
      }
      if (!sx0 && !su0 && !detect) throw CLI::ValidationError("simulate", "give --x0/--u0, --detect, or both");
      if (!trajectory_path.empty()) write_file(trajectory_path, csv.str());
      if (format == "csv") {
        payload << csv.str();
      } else {
        payload << dump(j);
      }
    } else if (*verify) {
      std::vector<std::string> ids = only;
      if (ids.empty()) {
        for (const auto& c : verify::criteria()) ids.push_back(c.id);
      }
      bool all = true;
      for (const auto& id : ids) {
        const auto r = verify::run(id);
        all = all && r.passed;
        payload << verify::format_line(r) << "\n";
      }
      if (!all) status = Exit::checks_failed;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << "\n";
    return Exit::usage;
  } catch (const DomainError& e) {
    err << "domain error in " << e.what() << "\n";
    return Exit::domain;
  } catch (const StructuralError& e) {
    err << "invalid input to " << e.what() << "\n";
    return Exit::usage;
  } catch (const Error& e) {
    err << "internal consistency failure in " << e.what() << "\n";
    return Exit::consistency;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return Exit::consistency;
  }

  if (out_path.empty()) {
    out << payload.str();
  } else {
    try {
      write_file(out_path, payload.str());
    } catch (const DomainError& e) {
      err << "domain error in " << e.what() << "\n";
      return Exit::domain;
    }
  }
  return status;
}

}  // namespace isochrone::cli
