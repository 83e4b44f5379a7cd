#include "fdom/fdom.h"

#include "core/calibrate.hpp"
#include "core/document.hpp"
#include "core/svg.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

struct fdom_order {
  fdom::QuaternionOrder order;
};

struct fdom_domain {
  fdom::ToleranceContext ctx;
  fdom::QuaternionOrder order;
  fdom::DomainResult result;
  std::uint64_t seed;
};

namespace {

thread_local std::string last_error;

fdom_status map(fdom::ErrorCode code) {
  using fdom::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return FDOM_ERR_INVALID_ARGUMENT;
    case ErrorCode::definite_algebra: return FDOM_ERR_DEFINITE_ALGEBRA;
    case ErrorCode::invalid_element: return FDOM_ERR_INVALID_ELEMENT;
    case ErrorCode::degenerate_input: return FDOM_ERR_DEGENERATE_INPUT;
    case ErrorCode::divergence: return FDOM_ERR_DIVERGENCE;
    case ErrorCode::non_cocompact: return FDOM_ERR_NON_COCOMPACT;
    case ErrorCode::unsupported: return FDOM_ERR_UNSUPPORTED;
    case ErrorCode::precision: return FDOM_ERR_PRECISION;
    case ErrorCode::resource: return FDOM_ERR_RESOURCE;
    case ErrorCode::not_in_group: return FDOM_ERR_NOT_IN_GROUP;
    case ErrorCode::io: return FDOM_ERR_IO;
    case ErrorCode::numeric: return FDOM_ERR_NUMERIC;
  }
  return FDOM_ERR_INTERNAL;
}

template <class F>
fdom_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return FDOM_OK;
  } catch (const fdom::Error& e) {
    last_error = e.what();
    return map(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FDOM_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FDOM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return FDOM_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) fdom::fail(fdom::ErrorCode::invalid_argument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::int64_t to_i64(const fdom::BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fdom::fail(fdom::ErrorCode::unsupported, "value does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

fdom::OrderArithmetic arithmetic(const fdom_domain* d) {
  return fdom::OrderArithmetic(d->order, d->result.center, d->ctx);
}

fdom_order* wrap(fdom::QuaternionOrder o) { return new fdom_order{std::move(o)}; }

// The working precision is global per thread; reset it to the default while
// building orders, whose embeddings are recomputed later anyway.
void default_precision() { fdom::ToleranceContext().activate(); }

}  // namespace

extern "C" {

const char* fdom_version(void) { return "1.0.0"; }

const char* fdom_last_error(void) { return last_error.c_str(); }

const char* fdom_status_name(fdom_status status) {
  switch (status) {
    case FDOM_OK: return "ok";
    case FDOM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FDOM_ERR_DEFINITE_ALGEBRA: return "definite algebra";
    case FDOM_ERR_INVALID_ELEMENT: return "invalid element";
    case FDOM_ERR_DEGENERATE_INPUT: return "degenerate input";
    case FDOM_ERR_DIVERGENCE: return "divergence";
    case FDOM_ERR_NON_COCOMPACT: return "non-cocompact group";
    case FDOM_ERR_UNSUPPORTED: return "unsupported";
    case FDOM_ERR_PRECISION: return "insufficient precision";
    case FDOM_ERR_RESOURCE: return "resource limit";
    case FDOM_ERR_NOT_IN_GROUP: return "not in group";
    case FDOM_ERR_IO: return "i/o error";
    case FDOM_ERR_NUMERIC: return "numeric failure";
    case FDOM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void fdom_string_free(char* s) { std::free(s); }

void fdom_options_init(fdom_options* options) {
  if (!options) return;
  *options = fdom_options{};
  options->precision_digits = fdom::ToleranceContext::kDefaultDigits;
  options->use_ifp = 1;
}

fdom_status fdom_order_maximal(const char* a, const char* b, fdom_order** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    default_precision();
    auto alg = fdom::make_algebra(fdom::parse_rational(a), fdom::parse_rational(b));
    *out = wrap(fdom::maximal_order(alg));
  });
}

fdom_status fdom_order_from_basis(const char* a, const char* b, const char* const basis[16], fdom_order** out) {
  return guarded([&] {
    require(a && b && basis && out, "null argument");
    default_precision();
    auto alg = fdom::make_algebra(fdom::parse_rational(a), fdom::parse_rational(b));
    std::array<fdom::QuaternionElement, 4> rows;
    for (int i = 0; i < 16; ++i) {
      require(basis[i] != nullptr, "null basis entry");
      rows[i / 4].x[i % 4] = fdom::parse_rational(basis[i]);
    }
    *out = wrap(fdom::make_order(alg, rows));
  });
}

fdom_status fdom_order_from_file(const char* path, fdom_order** out) {
  return guarded([&] {
    require(path && out, "null argument");
    default_precision();
    std::istringstream in(fdom::read_file(path));
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      for (char& c : line)
        if (c == ',' || c == ';' || c == '\t') c = ' ';
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens.push_back(w);
    }
    require(tokens.size() == 2 || tokens.size() == 18, "order file needs a,b and optionally 16 basis rationals");
    auto alg = fdom::make_algebra(fdom::parse_rational(tokens[0]), fdom::parse_rational(tokens[1]));
    if (tokens.size() == 2) {
      *out = wrap(fdom::maximal_order(alg));
      return;
    }
    std::array<fdom::QuaternionElement, 4> rows;
    for (int i = 0; i < 16; ++i) rows[i / 4].x[i % 4] = fdom::parse_rational(tokens[2 + i]);
    *out = wrap(fdom::make_order(alg, rows));
  });
}

fdom_status fdom_order_for_discriminant(int64_t discriminant, fdom_order** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    default_precision();
    auto [a, b] = fdom::algebra_for_discriminant(discriminant);
    *out = wrap(fdom::maximal_order(fdom::make_algebra(a, b)));
  });
}

fdom_status fdom_order_eichler(int64_t level, fdom_order** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    default_precision();
    *out = wrap(fdom::eichler_order(level));
  });
}

void fdom_order_free(fdom_order* order) { delete order; }

int64_t fdom_order_discriminant(const fdom_order* order) {
  return order ? order->order.algebra.discriminant.convert_to<std::int64_t>() : 0;
}

int64_t fdom_order_reduced_discriminant(const fdom_order* order) {
  return order ? order->order.reduced_discriminant.convert_to<std::int64_t>() : 0;
}

fdom_status fdom_order_algebra(const fdom_order* order, char** a, char** b) {
  return guarded([&] {
    require(order && a && b, "null argument");
    *a = duplicate(fdom::to_string(order->order.algebra.a));
    *b = duplicate(fdom::to_string(order->order.algebra.b));
  });
}

double fdom_order_default_C(const fdom_order* order) {
  if (!order) return 0;
  default_precision();
  return fdom::compute_C(1, fdom::Real(1), fdom::Real(order->order.reduced_discriminant)).convert_to<double>();
}

fdom_status fdom_order_area_target(const fdom_order* order, double* out) {
  return guarded([&] {
    require(order && out, "null argument");
    default_precision();
    *out = fdom::area_target(order->order).convert_to<double>();
  });
}

fdom_status fdom_domain_compute(const fdom_order* order, const fdom_options* options, fdom_domain** out) {
  return guarded([&] {
    require(order && out, "null argument");
    *out = nullptr;
    fdom_options opts;
    fdom_options_init(&opts);
    if (options) opts = *options;
    require(opts.C >= 0 && opts.c_balance >= 0 && opts.r_exponent >= 0 && opts.area >= 0,
            "overrides must be positive");
    fdom::ToleranceContext ctx(opts.precision_digits > 0 ? opts.precision_digits
                                                        : fdom::ToleranceContext::kDefaultDigits);
    ctx.activate();
    fdom::DriverOptions d;
    d.seed = opts.seed;
    if (opts.C > 0) d.C = fdom::Real(opts.C);
    if (opts.c_balance > 0) d.c_balance = opts.c_balance;
    if (opts.r_exponent > 0) d.r_exponent = opts.r_exponent;
    if (opts.area > 0) d.area = fdom::Real(opts.area);
    d.use_ifp = opts.use_ifp != 0;
    if (opts.max_iterations > 0) d.max_iterations = opts.max_iterations;
    auto* handle = new fdom_domain{ctx, order->order, fdom::fundamental_domain(order->order, d, ctx), opts.seed};
    *out = handle;
    if (!handle->result.converged)
      fdom::fail(fdom::ErrorCode::divergence, "iteration cap reached before the domain closed up");
  });
}

void fdom_domain_free(fdom_domain* domain) { delete domain; }

size_t fdom_domain_side_count(const fdom_domain* d) { return d ? d->result.boundary.size() : 0; }
size_t fdom_domain_generator_count(const fdom_domain* d) { return d ? d->result.generators.size() : 0; }

double fdom_domain_area(const fdom_domain* d) {
  if (!d || !d->result.boundary.area) return -1;
  return d->result.boundary.area->convert_to<double>();
}

double fdom_domain_area_target(const fdom_domain* d) { return d ? d->result.mu_target.convert_to<double>() : 0; }
int fdom_domain_converged(const fdom_domain* d) { return d && d->result.converged; }
int fdom_domain_exact(const fdom_domain* d) { return d && d->result.exact; }
int fdom_domain_pairing_complete(const fdom_domain* d) {
  return d && d->result.pairing.complete() && !d->result.boundary.has_infinite_side();
}
size_t fdom_domain_elements_found(const fdom_domain* d) { return d ? d->result.stats.elements_found : 0; }
size_t fdom_domain_trials(const fdom_domain* d) { return d ? d->result.stats.trials : 0; }
size_t fdom_domain_iterations(const fdom_domain* d) { return d ? d->result.stats.iterations : 0; }

fdom_status fdom_domain_area_string(const fdom_domain* d, char** out) {
  return guarded([&] {
    require(d && out, "null argument");
    require(d->result.boundary.area.has_value(), "domain has infinite area");
    *out = duplicate(fdom::to_string(*d->result.boundary.area, d->ctx.digits()));
  });
}

long fdom_domain_side_partner(const fdom_domain* d, size_t side) {
  if (!d || side >= d->result.pairing.partner.size() || !d->result.pairing.partner[side]) return -1;
  return static_cast<long>(*d->result.pairing.partner[side]);
}

fdom_status fdom_domain_side_coords(const fdom_domain* d, size_t side, int64_t coords[4]) {
  return guarded([&] {
    require(d && coords, "null argument");
    require(side < d->result.boundary.size(), "side index out of range");
    const auto& s = d->result.boundary.sides[side];
    require(s.has_value() && s->coords.has_value(), "side has no order element");
    for (int i = 0; i < 4; ++i) coords[i] = to_i64((*s->coords)[i]);
  });
}

fdom_status fdom_domain_word(const fdom_domain* d, const int64_t coords[4], long** letters, size_t* length) {
  return guarded([&] {
    require(d && coords && letters && length, "null argument");
    d->ctx.activate();
    auto arith = arithmetic(d);
    auto g = arith.element({coords[0], coords[1], coords[2], coords[3]});
    auto w = fdom::word(d->result, g, arith, d->ctx);
    auto* buf = static_cast<long*>(std::malloc(sizeof(long) * (w.empty() ? 1 : w.size())));
    if (!buf) throw std::bad_alloc();
    std::copy(w.begin(), w.end(), buf);
    *letters = buf;
    *length = w.size();
  });
}

void fdom_word_free(long* letters) { std::free(letters); }

fdom_status fdom_domain_evaluate_word(const fdom_domain* d, const long* letters, size_t length, int64_t coords[4]) {
  return guarded([&] {
    require(d && coords && (letters || length == 0), "null argument");
    d->ctx.activate();
    auto arith = arithmetic(d);
    auto g = fdom::evaluate_word(d->result, std::vector<long>(letters, letters + length), arith);
    auto c = fdom::canonical_coords(*g.coords);
    for (int i = 0; i < 4; ++i) coords[i] = to_i64(c[i]);
  });
}

fdom_status fdom_domain_json(const fdom_domain* d, char** out) {
  return guarded([&] {
    require(d && out, "null argument");
    d->ctx.activate();
    *out = duplicate(fdom::serialize_document(fdom::export_document(d->result, d->order, d->ctx, d->seed)));
  });
}

fdom_status fdom_domain_write_json(const fdom_domain* d, const char* path) {
  return guarded([&] {
    require(d && path, "null argument");
    d->ctx.activate();
    fdom::save_document(fdom::export_document(d->result, d->order, d->ctx, d->seed), path);
  });
}

fdom_status fdom_domain_write_svg(const fdom_domain* d, const char* path, int overlay_circles) {
  return guarded([&] {
    require(d && path, "null argument");
    d->ctx.activate();
    fdom::SvgOptions o;
    o.isometric_circles = overlay_circles != 0;
    fdom::write_svg(d->result.boundary, path, o);
  });
}

fdom_status fdom_verify_file(const char* path, int* ok, char** message) {
  return guarded([&] {
    require(path && ok, "null argument");
    auto report = fdom::verify_document(fdom::load_document(path));
    *ok = report.ok ? 1 : 0;
    if (message) *message = duplicate(report.message);
  });
}

fdom_status fdom_calibrate(const fdom_order* order, const double* C_values, size_t count, size_t trials,
                           uint64_t seed, double area, int precision_digits, const char* csv_path, double* slope,
                           double* r_squared) {
  return guarded([&] {
    require(order != nullptr, "null argument");
    require(trials > 0, "trial count must be positive");
    fdom::ToleranceContext ctx(precision_digits > 0 ? precision_digits : fdom::ToleranceContext::kDefaultDigits);
    ctx.activate();
    fdom::CalibrationOptions o;
    o.trials_per_C = trials;
    o.seed = seed;
    if (area > 0) o.area = fdom::Real(area);
    if (C_values) {
      require(count >= 2, "calibration needs at least two C values");
      o.C_values.assign(C_values, C_values + count);
    } else {
      const double star =
          fdom::compute_C(1, fdom::Real(1), fdom::Real(order->order.reduced_discriminant)).convert_to<double>();
      const double lo = std::max(2.0, star / 4), hi = std::max(lo + 1, 2 * star);
      for (int k = 0; k < 10; ++k) o.C_values.push_back(lo + (hi - lo) * k / 9);
    }
    auto samples = fdom::calibrate(order->order, o, ctx);
    if (csv_path) fdom::write_file_atomic(csv_path, fdom::calibration_csv(samples));
    if (slope) *slope = fdom::fit_success_rate(samples).slope;
    if (r_squared) *r_squared = fdom::fit_calibration_timing(samples).r_squared;
  });
}

}  // extern "C"
