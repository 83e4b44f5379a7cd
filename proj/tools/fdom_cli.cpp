// Command-line front end; talks to the library only through the C API.

#include <fdom/fdom.h>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int report(fdom_status status, const char* what) {
  std::cerr << "fdom: " << what << ": " << fdom_status_name(status);
  const char* detail = fdom_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  return kExitFailure;
}

struct Order {
  fdom_order* ptr = nullptr;
  ~Order() { fdom_order_free(ptr); }
};

struct Domain {
  fdom_domain* ptr = nullptr;
  ~Domain() { fdom_domain_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet fundamental domains for unit groups of quaternion orders"};
  app.set_version_flag("--version", std::string(fdom_version()));

  std::string algebra, order_file, out_path, svg_path, calibrate_path, verify_path;
  std::optional<long long> disc, eichler;
  int prec = 38;
  unsigned long long seed = 0;
  double C = 0, c_balance = 0, r_exponent = 0, area = 0;
  bool plain_fp = false, overlay = false, verbose = false;
  std::size_t max_iterations = 0, calibrate_trials = 2000;

  auto* source = app.add_option_group("source", "where the order comes from");
  source->add_option("--algebra", algebra, "maximal order of (a, b), given as A,B with rationals p or p/q");
  source->add_option("--order", order_file, "order file: a,b followed optionally by 16 basis rationals");
  source->add_option("--disc", disc, "maximal order of an algebra of this discriminant");
  source->add_option("--eichler", eichler, "Eichler order of this level in M2(Q); only with --calibrate and --area");
  source->add_option("--verify", verify_path, "re-check a saved document's pairing and area");
  source->require_option(1);

  app.add_option("--prec", prec, "working precision in decimal digits")->check(CLI::Range(10, 100000));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_path, "write the domain as JSON");
  app.add_option("--svg", svg_path, "write the domain as SVG");
  app.add_flag("--circles", overlay, "overlay isometric circles in the SVG");
  app.add_option("--calibrate", calibrate_path, "run timing calibration and write a CSV instead of a domain");
  app.add_option("--calibrate-trials", calibrate_trials, "trials per C value for --calibrate")
      ->check(CLI::PositiveNumber);
  app.add_option("--C", C, "override the search bound C")->check(CLI::PositiveNumber);
  app.add_option("--c", c_balance, "override the batch-size constant c")->check(CLI::PositiveNumber);
  app.add_option("--r-exponent", r_exponent, "override the sampling-radius exponent")->check(CLI::PositiveNumber);
  app.add_option("--area", area, "area override (for non-maximal orders)")->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", max_iterations, "cap on enumeration batches")->check(CLI::PositiveNumber);
  app.add_flag("--plain-fp", plain_fp, "use plain Fincke-Pohst instead of the quadratic-solving variant");
  app.add_flag("-v,--verbose", verbose, "print statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!verify_path.empty()) {
    int ok = 0;
    char* message = nullptr;
    fdom_status st = fdom_verify_file(verify_path.c_str(), &ok, &message);
    if (st != FDOM_OK) return report(st, "verification failed");
    std::cout << (ok ? "verified: " : "NOT verified: ") << message << "\n";
    fdom_string_free(message);
    return ok ? kExitOk : kExitFailure;
  }

  Order order;
  fdom_status st = FDOM_OK;
  if (!algebra.empty()) {
    auto comma = algebra.find(',');
    if (comma == std::string::npos) {
      std::cerr << "fdom: --algebra expects A,B\n";
      return kExitUsage;
    }
    st = fdom_order_maximal(algebra.substr(0, comma).c_str(), algebra.substr(comma + 1).c_str(), &order.ptr);
  } else if (!order_file.empty()) {
    st = fdom_order_from_file(order_file.c_str(), &order.ptr);
  } else if (disc) {
    st = fdom_order_for_discriminant(*disc, &order.ptr);
  } else {
    st = fdom_order_eichler(*eichler, &order.ptr);
  }
  if (st != FDOM_OK) return report(st, "cannot build the order");

  if (!calibrate_path.empty()) {
    double slope = 0, r2 = 0;
    st = fdom_calibrate(order.ptr, nullptr, 0, calibrate_trials, seed, area, prec, calibrate_path.c_str(), &slope,
                        &r2);
    if (st != FDOM_OK) return report(st, "calibration failed");
    std::cout << "elements per trial slope " << slope << ", timing fit R^2 " << r2 << "\n";
    return kExitOk;
  }

  fdom_options options;
  fdom_options_init(&options);
  options.precision_digits = prec;
  options.seed = seed;
  options.C = C;
  options.c_balance = c_balance;
  options.r_exponent = r_exponent;
  options.area = area;
  options.use_ifp = plain_fp ? 0 : 1;
  options.max_iterations = max_iterations;

  Domain domain;
  st = fdom_domain_compute(order.ptr, &options, &domain.ptr);
  if (st != FDOM_OK && st != FDOM_ERR_DIVERGENCE) return report(st, "domain computation failed");
  const bool converged = st == FDOM_OK;

  char* area_text = nullptr;
  if (fdom_domain_area_string(domain.ptr, &area_text) == FDOM_OK) {
    std::cout << "discriminant " << fdom_order_discriminant(order.ptr) << "  sides "
              << fdom_domain_side_count(domain.ptr) << "  area " << area_text << "\n";
    fdom_string_free(area_text);
  } else {
    std::cout << "discriminant " << fdom_order_discriminant(order.ptr) << "  sides "
              << fdom_domain_side_count(domain.ptr) << "  area infinite\n";
  }
  if (verbose)
    std::cout << "target " << fdom_domain_area_target(domain.ptr) << "  iterations "
              << fdom_domain_iterations(domain.ptr) << "  trials " << fdom_domain_trials(domain.ptr)
              << "  elements " << fdom_domain_elements_found(domain.ptr) << "  pairing "
              << (fdom_domain_pairing_complete(domain.ptr) ? "complete" : "incomplete") << "\n";

  if (!out_path.empty()) {
    st = fdom_domain_write_json(domain.ptr, out_path.c_str());
    if (st != FDOM_OK) return report(st, "cannot write the JSON document");
  }
  if (!svg_path.empty()) {
    st = fdom_domain_write_svg(domain.ptr, svg_path.c_str(), overlay ? 1 : 0);
    if (st != FDOM_OK) return report(st, "cannot write the SVG");
  }
  if (!converged) return report(FDOM_ERR_DIVERGENCE, "domain did not close up");
  return kExitOk;
}
