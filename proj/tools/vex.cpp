// vex: command-line front end over the vexkit library.

#include <iostream>

#include "CLI11.hpp"
#include "vex/cli/commands.hpp"

int main(int argc, char** argv) {
  using vex::cli::Options;
  CLI::App app{"vex: exact extremality, stationarity and dual certificates"};
  app.require_subcommand(1);
  Options o;
  std::string eps, rho, delta;

  auto common = [&](CLI::App* c) {
    c->add_option("-p,--problem", o.problem, "problem file");
    c->add_option("--out", o.out, "output file (default: stdout)");
    c->add_option("--manifest", o.manifest, "write a run manifest here");
  };
  auto flavor = [&](CLI::App* c) {
    c->add_option("--flavor", o.flavor, "frechet | clarke | convex")->check(CLI::IsMember({"frechet", "clarke", "convex"}));
  };

  auto* check = app.add_subcommand("check", "decide a property on the schedule");
  common(check);
  check->add_option("--property", o.property, "extremal | stationary | approx-stationary | extremal-point");
  check->add_option("--levels", o.levels, "schedule depth (levels 2^-1 .. 2^-K)");
  check->add_option("--rho", rho, "restrict to one radius (p/q or inf)");

  auto* cones = app.add_subcommand("cones", "normal cone of a set at a point");
  common(cones);
  flavor(cones);
  cones->add_option("--set", o.set_file, "set file (default: the problem's graph)");
  cones->add_option("--point", o.point, "point, e.g. 1/2,-3")->required();

  auto* cod = app.add_subcommand("coderivative", "coderivative of the problem mapping");
  common(cod);
  flavor(cod);
  cod->add_option("--x", o.x, "base x (default: reference point)");
  cod->add_option("--y", o.y, "base y (default: reference value)");
  cod->add_option("--ystar", o.ystar, "dual direction y*")->required();

  auto* certify = app.add_subcommand("certify", "search a dual certificate");
  common(certify);
  flavor(certify);
  certify->add_option("--eps", eps, "level")->required();
  certify->add_option("--kind", o.kind, "separation | multiplier | singular")
      ->check(CLI::IsMember({"separation", "multiplier", "singular"}));
  certify->add_option("--levels", o.levels, "schedule depth");

  auto* verify = app.add_subcommand("verify-cert", "verify a certificate file");
  common(verify);
  verify->add_option("--cert", o.cert_file, "certificate file")->required();
  verify->add_option("--eps", eps, "override the certificate level");

  auto* qc = app.add_subcommand("qc", "qualification condition");
  common(qc);
  flavor(qc);
  qc->add_option("--levels", o.levels, "schedule depth");
  qc->add_option("--delta", delta, "Aubin window radius (default 1/2)");

  auto* aubin = app.add_subcommand("aubin", "Aubin modulus and normal-bound audit");
  common(aubin);
  aubin->add_option("--delta", delta, "window radius (default 1/2)");

  auto* ls = app.add_subcommand("levelset", "level sets and properties O1..O6");
  ls->add_option("--mapping", o.mapping_file, "level-set mapping file")->required();
  ls->add_option("--point", o.point, "point y")->required();
  ls->add_flag("--props", o.props, "check O1..O6");
  ls->add_option("--out", o.out, "output file (default: stdout)");
  ls->add_option("--manifest", o.manifest, "write a run manifest here");

  auto* corpus = app.add_subcommand("corpus", "run the bundled example corpus");
  corpus->add_option("--filter", o.filter, "case name prefix or tag");
  corpus->add_option("--out", o.out, "write per-case results and report.json here");
  corpus->add_option("--corpus-dir", o.corpus_dir, "corpus directory");
  corpus->add_option("--inject-fault", o.inject_fault, "replace a module by a stub (cones)");
  corpus->add_option("--levels", o.levels, "schedule depth");
  corpus->add_option("--manifest", o.manifest, "write a run manifest here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : vex::cli::kInputError;
  }
  if (!eps.empty()) o.eps = eps;
  if (!rho.empty()) o.rho = rho;
  if (!delta.empty()) o.delta = delta;
  const std::string command = app.get_subcommands().front()->get_name();
  return vex::cli::execute(command, o, std::cout, std::cerr);
}
