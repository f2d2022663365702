#include "rtsgs/cli.hpp"

#include "rtsgs/biortho.hpp"
#include "rtsgs/diagnostics.hpp"
#include "rtsgs/lanczos.hpp"
#include "rtsgs/matrix_market.hpp"
#include "rtsgs/random.hpp"
#include "rtsgs/rbiortho.hpp"
#include "rtsgs/testmatrices.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace rtsgs::cli {

namespace {

// Seed tags keep every random object on its own substream.
constexpr std::uint64_t kTagSketch = 7;
constexpr std::uint64_t kTagStart = 11;
constexpr std::uint64_t kTagSpectrum = 13;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Index parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size() || v < 1) throw std::invalid_argument(value);
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw ConfigError("--" + key + " expects a positive integer, got '" + value + "'");
  }
}

std::uint64_t parse_seed(const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size() || value.front() == '-') throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("--seed expects a non-negative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("--" + key + " expects true or false, got '" + value + "'");
}

// Output target: the configured file, else the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot write '" + path + "'");
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }
  void finish(const std::string& path) {
    os_->flush();
    if (!*os_) throw IoError("write to '" + (path.empty() ? std::string("output") : path) + "' failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

std::string num(double v) { return format_number(v); }

SketchOperator make_sketch(const RunConfig& cfg, Index n, std::uint64_t key) {
  const SketchKind kind = parse_sketch_kind(cfg.sketch);
  switch (kind) {
    case SketchKind::SparseSign:
      return SketchOperator::sparse_sign(cfg.s, n, cfg.zeta, key, parse_sketch_scaling(cfg.scaling));
    case SketchKind::Gaussian: return SketchOperator::gaussian(cfg.s, n, key);
    case SketchKind::Identity: return SketchOperator::identity(n);
  }
  throw ConfigError("unknown sketch kind");
}

std::pair<MatrixD, MatrixD> biortho_inputs(const RunConfig& cfg) {
  if (!cfg.input_path.empty()) {
    const MatrixD X = MatrixD(read_matrix_market(cfg.input_path));
    const MatrixD Y = cfg.input_path_y.empty() ? X : MatrixD(read_matrix_market(cfg.input_path_y));
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw FormatError("X and Y files differ in shape");
    return {X, Y};
  }
  if (cfg.matrix == "gaussian") return gen_gaussian_pair(cfg.n, cfg.m, cfg.seed);
  return gen_ill_conditioned(cfg.n, cfg.m);
}

MatrixOracle lanczos_operator(const RunConfig& cfg) {
  if (!cfg.input_path.empty()) return MatrixOracle::sparse(read_matrix_market(cfg.input_path));
  return MatrixOracle::dense(gen_prescribed_spectrum(decaying_spectrum(cfg.n), derive_seed(cfg.seed, kTagSpectrum)));
}

VectorD start_vector(Index n, std::uint64_t seed) { return gaussian_matrix(n, 1, derive_seed(seed, kTagStart)).col(0); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- single runs --------------------------------------------------------

void write_iterations(std::ostream& os, const IterationDiagnostics& d) {
  os << "step,cond_Q,cond_P,biorth,inv_cos,d,sketched_dots\n";
  for (std::size_t i = 0; i < d.step.size(); ++i)
    os << d.step[i] << ',' << num(d.cond_Q[i]) << ',' << num(d.cond_P[i]) << ',' << num(d.biorth_loss[i]) << ','
       << num(d.inv_cos_angle[i]) << ',' << num(d.d[i]) << ',' << d.sketched_dots[i] << '\n';
}

int run_biortho(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  auto [X, Y] = biortho_inputs(cfg);
  Sink sink(cfg.out_path, out);
  Status status;
  if (cfg.command == "biortho") {
    BiorthConfig bc;
    bc.variant = parse_variant(cfg.variant);
    bc.passes = cfg.passes;
    bc.record_diagnostics = true;
    const BiorthResult r = two_sided_gs(X, Y, bc);
    write_iterations(*sink, r.diagnostics);
    status = r.status;
    log << to_string(bc.variant) << " passes=" << cfg.passes << " columns=" << r.Q.cols()
        << " biorth=" << num(biorth_loss(r.Q, r.P)) << " status=" << to_string(status) << '\n';
  } else {
    RBiorthConfig rc;
    rc.variant = parse_variant(cfg.variant);
    rc.passes = cfg.passes;
    rc.sketch = make_sketch(cfg, X.rows(), derive_seed(cfg.seed, kTagSketch));
    rc.precision = cfg.precision == "mixed" ? PrecisionPolicy::mixed() : PrecisionPolicy::uniform();
    rc.record_diagnostics = true;
    const RBiorthResult r = randomized_two_sided_gs(X, Y, rc);
    write_iterations(*sink, r.diagnostics);
    status = r.status;
    log << 'r' << to_string(rc.variant) << " passes=" << cfg.passes << " columns=" << r.Q.cols()
        << " sketch_biorth=" << num(sketch_biorth_error(r.SQ, r.SP)) << " status=" << to_string(status) << '\n';
  }
  sink.finish(cfg.out_path);
  return status.complete() ? kOk : kBreakdown;
}

int run_lanczos(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MatrixOracle A = lanczos_operator(cfg);
  if (cfg.m > A.n) throw ConfigError("--m exceeds the matrix dimension");
  const VectorD q1 = start_vector(A.n, cfg.seed);
  LanczosResult res;
  if (cfg.command == "lanczos") {
    BiorthConfig bc;
    bc.variant = parse_variant(cfg.variant);
    bc.passes = cfg.passes;
    res = nonsym_lanczos(A, q1, q1, cfg.m, bc);
  } else {
    RunConfig local = cfg;
    local.s = std::min(cfg.s, A.n);
    RBiorthConfig rc;
    rc.variant = parse_variant(cfg.variant);
    rc.passes = cfg.passes;
    rc.sketch = make_sketch(local, A.n, derive_seed(cfg.seed, kTagSketch));
    rc.precision = cfg.precision == "mixed" ? PrecisionPolicy::mixed() : PrecisionPolicy::uniform();
    res = rand_nonsym_lanczos(A, q1, q1, cfg.m, rc);
  }
  const Index k = std::min<Index>(cfg.ritz, res.steps());
  const auto triplets = ritz_triplets(A, res, k);
  Sink sink(cfg.out_path, out);
  *sink << "rank,theta_re,theta_im,res_right,res_left,warning\n";
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const RitzTriplet& t = triplets[i];
    *sink << i + 1 << ',' << num(t.theta.real()) << ',' << num(t.theta.imag()) << ',' << num(t.res_right) << ','
          << num(t.res_left) << ',' << (t.warning ? 1 : 0) << '\n';
  }
  sink.finish(cfg.out_path);
  const ArnoldiResidual ar = arnoldi_residual(A, res);
  log << cfg.command << " n=" << A.n << " steps=" << res.steps() << " arnoldi_right=" << num(ar.right)
      << " arnoldi_left=" << num(ar.left) << " status=" << to_string(res.status) << '\n';
  return res.status.complete() ? kOk : kBreakdown;
}

// --- experiment drivers ------------------------------------------------

struct MethodRow {
  bool randomized;
  Variant variant;
  int passes;
  bool mixed;

  std::string label() const {
    std::string s = mixed ? "mp-" : "";
    if (randomized) s += 'r';
    s += to_string(variant);
    if (passes > 1) s += std::to_string(passes);
    return s;
  }
};

std::vector<MethodRow> table_rows(const std::string& command) {
  if (command == "table4")
    return {{true, Variant::MGS, 2, false},  {true, Variant::CGS, 3, false}, {true, Variant::CGS_O, 2, false},
            {true, Variant::MGS, 2, true},   {true, Variant::CGS, 3, true},  {true, Variant::CGS_O, 2, true}};
  const std::vector<std::pair<Variant, int>> base = {{Variant::MGS, 1}, {Variant::MGS, 2},   {Variant::CGS, 1},
                                                     {Variant::CGS, 2}, {Variant::CGS, 3},   {Variant::CGS_O, 1},
                                                     {Variant::CGS_O, 2}};
  std::vector<MethodRow> rows;
  for (bool randomized : {false, true})
    for (const auto& [v, p] : base) rows.push_back({randomized, v, p, false});
  return rows;
}

int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto [X, Y] = cfg.command == "table2" ? gen_gaussian_pair(cfg.n, cfg.m, cfg.seed)
                                               : gen_ill_conditioned(cfg.n, cfg.m);
  const SketchOperator sketch = make_sketch(cfg, cfg.n, derive_seed(cfg.seed, kTagSketch));
  Sink sink(cfg.out_path, out);
  *sink << "method,time_s,cond_Q,cond_P,err_X,err_Y,biorth\n";
  for (const MethodRow& row : table_rows(cfg.command)) {
    MatrixD Q, P, TX, TY;
    double biorth = 0.0, elapsed = 0.0;
    Status status;
    const auto t0 = std::chrono::steady_clock::now();
    if (row.randomized) {
      RBiorthConfig rc;
      rc.variant = row.variant;
      rc.passes = row.passes;
      rc.sketch = sketch;
      rc.precision = row.mixed ? PrecisionPolicy::mixed() : PrecisionPolicy::uniform();
      RBiorthResult r = randomized_two_sided_gs(X, Y, rc);
      elapsed = seconds_since(t0);
      biorth = sketch_biorth_error(r.SQ, r.SP);
      Q = std::move(r.Q), P = std::move(r.P), TX = std::move(r.TX), TY = std::move(r.TY);
      status = r.status;
    } else {
      BiorthConfig bc;
      bc.variant = row.variant;
      bc.passes = row.passes;
      BiorthResult r = two_sided_gs(X, Y, bc);
      elapsed = seconds_since(t0);
      biorth = biorth_loss(r.Q, r.P);
      Q = std::move(r.Q), P = std::move(r.P), TX = std::move(r.TX), TY = std::move(r.TY);
      status = r.status;
    }
    const Index k = Q.cols();
    const double err_x = decomposition_error(X.leftCols(k), Q, TX);
    const double err_y = decomposition_error(Y.leftCols(k), P, TY);
    *sink << row.label() << ',' << num(cfg.timing ? elapsed : 0.0) << ',' << num(cond2(Q)) << ',' << num(cond2(P))
          << ',' << num(err_x) << ',' << num(err_y) << ',' << num(biorth) << '\n';
    if (!status.complete()) log << row.label() << ": " << to_string(status) << ", metrics cover " << k << " columns\n";
  }
  sink.finish(cfg.out_path);
  log << cfg.command << " n=" << cfg.n << " m=" << cfg.m << " sketch=" << cfg.sketch << " s=" << cfg.s << '\n';
  return kOk;
}

// --- figures -----------------------------------------------------------------

int run_fig1(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::vector<Index> grid = cfg.s > 0 ? std::vector<Index>{cfg.s} : default_fig1_grid();
  std::vector<SketchKind> kinds;
  if (cfg.sketch == "all")
    kinds = {SketchKind::Gaussian, SketchKind::SparseSign};
  else
    kinds = {parse_sketch_kind(cfg.sketch)};
  const auto cells = sketched_orthogonal_ip_experiment(cfg.n, grid, cfg.trials, kinds, cfg.seed);
  Sink sink(cfg.out_path, out);
  *sink << "kind,s,trial_mean,trial_min\n";
  for (const SketchedIpCell& c : cells)
    *sink << to_string(c.kind) << ',' << c.s << ',' << num(c.mean) << ',' << num(c.min) << '\n';
  sink.finish(cfg.out_path);
  log << "fig1 n=" << cfg.n << " trials=" << cfg.trials << " sparse sign scaling=standard\n";
  return kOk;
}

int run_fig5(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MatrixOracle A = lanczos_operator(cfg);
  if (cfg.m > A.n) throw ConfigError("--m exceeds the matrix dimension");
  const VectorD q1 = start_vector(A.n, cfg.seed);

  BiorthConfig bc;
  bc.variant = Variant::MGS;
  bc.passes = 2;
  const LanczosResult det = nonsym_lanczos(A, q1, q1, cfg.m, bc);

  RunConfig local = cfg;
  local.s = std::min(cfg.s, A.n);
  RBiorthConfig rc;
  rc.variant = Variant::CGS_O;
  rc.passes = 2;
  rc.sketch = make_sketch(local, A.n, derive_seed(cfg.seed, kTagSketch));
  const LanczosResult rnd = rand_nonsym_lanczos(A, q1, q1, cfg.m, rc);

  Sink sink(cfg.out_path, out);
  *sink << "method,iteration,rank,theta_re,theta_im,residual\n";
  const std::pair<const char*, const LanczosResult*> runs[] = {{"MGS2", &det}, {"rCGS_O2", &rnd}};
  for (const auto& [label, res] : runs) {
    for (Index j = 1; j <= res->steps(); ++j) {
      const auto trip = ritz_triplets_at(A, *res, j, std::min<Index>(cfg.ritz, j));
      for (std::size_t r = 0; r < trip.size(); ++r)
        *sink << label << ',' << j << ',' << r + 1 << ',' << num(trip[r].theta.real()) << ','
              << num(trip[r].theta.imag()) << ',' << num(trip[r].res_right) << '\n';
    }
    log << label << " steps=" << res->steps() << " status=" << to_string(res->status) << '\n';
  }
  sink.finish(cfg.out_path);
  return det.status.complete() && rnd.status.complete() ? kOk : kBreakdown;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {"biortho", "rbiortho", "lanczos", "rlanczos", "fig1",
                                                "table1",  "table2",   "table4",  "fig5"};
  return list;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "command") cfg.command = value;
  else if (key == "n") cfg.n = parse_count(key, value);
  else if (key == "m") cfg.m = parse_count(key, value);
  else if (key == "s") cfg.s = parse_count(key, value);
  else if (key == "zeta") cfg.zeta = parse_count(key, value);
  else if (key == "trials") cfg.trials = parse_count(key, value);
  else if (key == "ritz") cfg.ritz = parse_count(key, value);
  else if (key == "passes") cfg.passes = static_cast<int>(parse_count(key, value));
  else if (key == "variant") cfg.variant = value;
  else if (key == "sketch") cfg.sketch = value;
  else if (key == "scaling") cfg.scaling = value;
  else if (key == "seed") cfg.seed = parse_seed(value);
  else if (key == "precision") cfg.precision = value;
  else if (key == "input") cfg.input_path = value;
  else if (key == "input-y" || key == "input_y") cfg.input_path_y = value;
  else if (key == "out") cfg.out_path = value;
  else if (key == "matrix") cfg.matrix = value;
  else if (key == "timing") cfg.timing = parse_bool(key, value);
  else throw ConfigError("unknown setting '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

RunConfig resolve(RunConfig cfg) {
  const auto& cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
    throw ConfigError("unknown command '" + cfg.command + "'");
  const std::string& c = cfg.command;
  auto fill = [](auto& field, auto value) {
    if (!field) field = value;
  };

  if (c == "table1" || c == "table4") {
    fill(cfg.n, 10000);
    fill(cfg.m, 200);
  } else if (c == "table2") {
    fill(cfg.n, 10000);
    fill(cfg.m, 500);
  } else if (c == "fig1") {
    fill(cfg.n, 10000);
    fill(cfg.trials, 100);
  } else if (c == "fig5") {
    fill(cfg.n, 1000);
    fill(cfg.m, 100);
  } else {
    fill(cfg.n, 1000);
    fill(cfg.m, 50);
  }
  if (cfg.variant.empty()) cfg.variant = c == "rlanczos" ? "CGS_O" : "MGS";
  if (cfg.passes == 0) cfg.passes = 2;
  if (cfg.sketch.empty()) cfg.sketch = c == "fig1" ? "all" : "sparse_sign";

  try {
    parse_variant(cfg.variant);
    if (cfg.sketch != "all") parse_sketch_kind(cfg.sketch);
    parse_sketch_scaling(cfg.scaling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.sketch == "all" && c != "fig1") throw ConfigError("--sketch all is only meaningful for fig1");
  if (cfg.passes > 3) throw ConfigError("--passes must be 1, 2 or 3");
  if (cfg.precision != "double" && cfg.precision != "mixed") throw ConfigError("--precision must be double or mixed");
  if (cfg.matrix != "ill" && cfg.matrix != "gaussian") throw ConfigError("--matrix must be ill or gaussian");
  if (c != "fig1" && c != "lanczos" && c != "rlanczos" && c != "fig5" && cfg.input_path.empty() && cfg.m > cfg.n)
    throw ConfigError("--m exceeds --n");
  if (c != "fig1") {
    const bool krylov = c == "rlanczos" || c == "fig5";
    fill(cfg.s, default_sketch_size(cfg.n, krylov ? cfg.m + 1 : cfg.m));
  }
  if (c == "fig1" && cfg.s > cfg.n) throw ConfigError("--s exceeds --n");
  fill(cfg.zeta, default_zeta(std::max<Index>(cfg.s, 2)));
  return cfg;
}

int run(const RunConfig& cfg_in, std::ostream& out, std::ostream& log) {
  try {
    const RunConfig cfg = resolve(cfg_in);
    const std::string& c = cfg.command;
    if (c == "biortho" || c == "rbiortho") return run_biortho(cfg, out, log);
    if (c == "lanczos" || c == "rlanczos") return run_lanczos(cfg, out, log);
    if (c == "fig1") return run_fig1(cfg, out, log);
    if (c == "fig5") return run_fig5(cfg, out, log);
    return run_table(cfg, out, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    log << "error: " << e.what() << '\n';
    return kFormatError;
  } catch (const NearBreakdown& e) {
    log << "error: " << e.what() << '\n';
    return kBreakdown;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace rtsgs::cli
