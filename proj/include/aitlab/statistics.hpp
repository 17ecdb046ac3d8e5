// Models of a string (finite sets, semimeasures, functions) realized as
// machine programs, and the deciders for sufficient, weak sufficient and
// typical models.
//
// Conventions for reading a model off a program's output:
//   Set          output is k*n bits; S is the set of its n-bit blocks.
//   Semimeasure  output is w*2^n bits; entry i is the numerator of P(x_i) / 2^w,
//                strings x_i in lexicographic order.
//   Function     run once per condition d in 2^m; F(d) is the output, which
//                must have n bits for every d.
#pragma once

#include "aitlab/bitstring.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dyadic.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace aitlab {

enum class ModelKind { Set, Semimeasure, Function };
enum class MachineMode { Prefix, Plain };
enum class Definition { SS, WSS, TM };
enum class VerdictState { Pass, Fail, NotInSupport, OutOfBudget };

std::string to_string(ModelKind k);
std::string to_string(MachineMode m);
std::string to_string(Definition d);
std::string to_string(VerdictState v);
ModelKind parse_model_kind(const std::string& s);
MachineMode parse_machine_mode(const std::string& s);

/// A program output that does not decode to a model of the requested kind.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Model {
  ModelKind kind = ModelKind::Set;
  MachineMode mode = MachineMode::Prefix;
  std::uint32_t n = 0;
  BitString program;                              ///< shortest known program; may be empty
  CodeLength complexity = CodeLength::infinite();  ///< K or C, per mode
  std::uint32_t width = 0;                        ///< Semimeasure: bits per table entry
  std::uint32_t data_width = 0;                   ///< Function: m, when every d has m bits

  std::vector<bool> members;                 ///< Set: indicator over 2^n
  std::vector<Dyadic> measure;               ///< Semimeasure: P over 2^n
  std::map<BitString, BitString> function;   ///< Function: d -> F(d)

  /// Canonical encoding of the extension (membership mask, table bits, or
  /// the images of a fixed-width function in order of d).
  BitString key() const;
  std::size_t set_size() const;
  Dyadic mass() const;
  bool in_support(const BitString& x) const;
  /// ||log Z|| rounded up to whole bits: ceil(log|S|), ceil(-log P(x)) or
  /// min l(d) with F(d) = x. Empty when x is outside the support.
  std::optional<std::int64_t> log_term(const BitString& x) const;
};

Model make_set_model(std::uint32_t n, const std::vector<BitString>& elements);
Model make_semimeasure_model(std::uint32_t n, std::vector<Dyadic> p);

/// Decoders over a program's output; throw ModelError when the output does not fit.
Model decode_set_output(const BitString& output, std::uint32_t n);
Model decode_semimeasure_output(const BitString& output, std::uint32_t n, std::uint32_t width);

/// The output of a program run with length parameter n and a condition, if it
/// halts within budget. In prefix mode the run must consume exactly the program.
std::optional<BitString> run_model_program(const BitString& program, std::uint32_t n, const BitString& condition,
                                           MachineMode mode, const Budgets& budgets);

Model decode_set_model(const BitString& program, std::uint32_t n, MachineMode mode, const Budgets& budgets);
Model decode_semimeasure_model(const BitString& program, std::uint32_t n, std::uint32_t width, MachineMode mode,
                               const Budgets& budgets);

/// Rejection of a function candidate, naming the condition that failed.
struct FunctionRejected : ModelError {
  FunctionRejected(const std::string& what, BitString d) : ModelError(what), condition(std::move(d)) {}
  BitString condition;
};
/// Runs the program under every d in 2^m.
Model decode_function_model(const BitString& program, std::uint32_t n, std::uint32_t m, MachineMode mode,
                            const Budgets& budgets);

// ---------------------------------------------------------------------------

/// Shannon-Fano-Elias code of a semimeasure over 2^n: y gets
/// ceil(-log P(y)) + 1 bits of sum_{z < y} P(z), rounded up.
struct ShannonFanoCode {
  std::map<BitString, BitString> code;    ///< y -> codeword
  std::map<BitString, BitString> decode;  ///< codeword -> y
};
ShannonFanoCode shannon_fano(const std::vector<Dyadic>& p, std::uint32_t n);

/// The code as a function model d -> y.
Model shannon_fano_convert(const Model& semimeasure);
/// P(y) = max 2^{-l(d)-1} over preimages, else 1/(4(nat(y)+1)^2) truncated to `width` bits.
Model func_to_measure(const Model& function, std::uint32_t width);
/// The image of F as a set model.
Model func_to_set(const Model& function);

// ---------------------------------------------------------------------------

/// All models of one kind found in one enumeration, keyed by extension, each
/// with its shortest program (shortlex-first among equals).
class ModelIndex {
 public:
  ModelIndex(ModelKind kind, MachineMode mode, std::uint32_t n, std::uint32_t param);

  ModelKind kind() const noexcept { return kind_; }
  MachineMode mode() const noexcept { return mode_; }
  std::uint32_t n() const noexcept { return n_; }
  /// Table width (Semimeasure) or data width (Function).
  std::uint32_t param() const noexcept { return param_; }

  void offer(Model model);
  void finish();

  const Model* find(const BitString& key) const;
  /// Models in order of complexity, then program (valid after finish()).
  const std::vector<const Model*>& ordered() const noexcept { return ordered_; }
  std::size_t size() const noexcept { return models_.size(); }

 private:
  ModelKind kind_;
  MachineMode mode_;
  std::uint32_t n_;
  std::uint32_t param_;
  std::map<BitString, Model> models_;
  std::vector<const Model*> ordered_;
};

struct Verdict {
  Definition defn = Definition::SS;
  ModelKind kind = ModelKind::Set;
  std::uint32_t n = 0;
  BitString x;
  std::int64_t slack = 0;
  CodeLength complexity = CodeLength::infinite();  ///< K(Z) (SS) or C(Z) (WSS, TM)
  std::optional<std::int64_t> log_term;
  CodeLength rhs = CodeLength::infinite();
  VerdictState state = VerdictState::OutOfBudget;
  std::optional<std::int64_t> deficiency;  ///< lhs - rhs
  BitString program;

  bool passed() const noexcept { return state == VerdictState::Pass; }
};
std::string verdict_csv_header();
std::string to_csv_row(const Verdict& v);

struct SearchResult {
  std::optional<Model> model;
  std::optional<Verdict> verdict;
  std::size_t examined = 0;
  CodeLength frontier = CodeLength::infinite();  ///< largest complexity examined
  /// l^Z_x (or l'^Z_x): the complexity of the model found.
  CodeLength l_value() const { return verdict ? verdict->complexity : CodeLength::infinite(); }
};

struct PPrime {
  BitString x;
  std::int64_t slack = 0;
  std::optional<std::int64_t> kprime;
  std::int64_t c = 0;
  Model model;
  std::map<BitString, CodeLength> k_now;   ///< K_{BB(k')}(y | k')
  std::map<BitString, CodeLength> k_prev;  ///< K_{BB(k'-1)}(y | k')
};

struct CensusRow {
  std::uint32_t i = 0;
  Model model;
  Verdict verdict;
};

struct TypicalityReport {
  BitString x;
  std::int64_t slack = 0;
  std::vector<Verdict> wss;         ///< models passing weak sufficiency
  std::vector<Verdict> tm_of_wss;   ///< typicality verdicts for those models
  std::optional<std::int64_t> c_emp;  ///< extra slack for all of them to be typical
  std::optional<std::int64_t> kprime;
  std::vector<Verdict> typical_probabilistic;
  std::optional<std::int64_t> c_minimal;  ///< max(k'_x - C(P)) over typical P, floored at 0
  std::optional<Verdict> pprime_wss;
  std::optional<Verdict> pprime_tm;
  bool vacuous() const noexcept { return wss.empty(); }
};

/// Model indexes and deciders over a Universe.
class ModelLibrary {
 public:
  explicit ModelLibrary(Universe& u, std::uint32_t width_extra = 4, std::uint32_t max_data_width = 3);

  Universe& universe() noexcept { return u_; }
  std::uint32_t width(std::uint32_t n) const noexcept { return n + width_extra_; }
  std::uint32_t max_data_width() const noexcept { return max_data_width_; }

  /// Index of the models of a kind; `m` is the data width for functions.
  const ModelIndex& index(std::uint32_t n, MachineMode mode, ModelKind kind, std::uint32_t m = 0);
  /// Every indexed model of a kind (all data widths for functions), by complexity.
  std::vector<const Model*> candidates(std::uint32_t n, MachineMode mode, ModelKind kind);

  /// K(Z) (prefix) or C(Z) (plain) of a model's extension.
  CodeLength complexity(const Model& z, MachineMode mode);
  /// Z*: the shortest plain program for the model.
  std::optional<BitString> shortest_plain(const Model& z);

  Verdict judge(const BitString& x, const Model& z, Definition defn, std::int64_t slack);
  Verdict is_sufficient(const BitString& x, const Model& z, std::int64_t slack) { return judge(x, z, Definition::SS, slack); }
  Verdict is_weak_sufficient(const BitString& x, const Model& z, std::int64_t slack) { return judge(x, z, Definition::WSS, slack); }
  Verdict is_typical(const BitString& x, const Model& z, std::int64_t slack) { return judge(x, z, Definition::TM, slack); }

  /// First candidate, in order of complexity, passing the definition.
  SearchResult search_minimal(const BitString& x, ModelKind kind, Definition defn, std::int64_t slack);

  std::optional<PPrime> construct_p_prime(const BitString& x, std::int64_t slack);
  std::vector<CensusRow> wss_census(const BitString& x, std::int64_t slack);
  TypicalityReport check_wss_is_tm(const BitString& x, std::int64_t slack);
  /// h_x(alpha) for alpha = 0..max: least ceil(log|S|) over set models with x in S and K(S) <= alpha.
  std::vector<std::pair<std::int64_t, std::optional<std::int64_t>>> structure_sweep(const BitString& x);

 private:
  Universe& u_;
  std::uint32_t width_extra_;
  std::uint32_t max_data_width_;
  std::map<std::tuple<std::uint32_t, int, int, std::uint32_t>, std::unique_ptr<ModelIndex>> indexes_;
};

/// Largest c such that running every k-bit plain program for bb(k - c) steps
/// already shows the bb(k) maximum; empty when even bb(k) steps do not.
std::optional<std::int64_t> bb_time_probe(Universe& u, std::uint32_t n, std::uint32_t k);

/// The cylinder {x^i v : v in 2^{n-i}} as a set model.
Model cylinder_set(const BitString& x, std::uint32_t i);

void store_model(const Model& z, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);
std::string serialize_model(const Model& z);
Model deserialize_model(const std::string& text);

}  // namespace aitlab
