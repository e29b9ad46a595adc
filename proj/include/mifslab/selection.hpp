#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mifslab/provider.hpp"
#include "mifslab/xreal.hpp"

namespace mifslab {

enum class MethodKind { MIFS, MIFSU, MRMR, MMIFSU, MICC, QMIFS, NMIFS, MAXMIFS };

/// A selection criterion; beta is set exactly for MIFS and MIFS-U.
struct MethodSpec {
  MethodKind kind = MethodKind::MRMR;
  std::optional<double> beta;

  static MethodSpec mifs(double beta) { return {MethodKind::MIFS, beta}; }
  static MethodSpec mifsu(double beta) { return {MethodKind::MIFSU, beta}; }
  static MethodSpec of(MethodKind kind) { return {kind, std::nullopt}; }

  /// Throws std::invalid_argument if beta is missing, misplaced or outside [0, 1].
  void validate() const;
  bool takes_beta() const { return kind == MethodKind::MIFS || kind == MethodKind::MIFSU; }
};

/// Lower-case CLI names: mifs, mifsu, mrmr, mmifsu, micc, qmifs, nmifs, maxmifs.
std::string method_name(MethodKind kind);
/// Display name such as "MIFS-U(beta=0.4)" or "mRMR".
std::string display_name(const MethodSpec& m);
const std::vector<std::string>& method_names();
/// Unknown names throw std::invalid_argument listing the valid ones.
MethodKind parse_method_kind(std::string_view name);
/// Beta defaults to 1 for MIFS / MIFS-U; given a beta, other methods are rejected.
MethodSpec parse_method(std::string_view name, std::optional<double> beta = std::nullopt);

/// Objective of candidate i given the already selected features (nonempty).
XReal objective(const MethodSpec& m, std::size_t i, const std::vector<std::size_t>& selected,
                const MIProvider& p);

/// Argmax of the class MI, smallest index on ties. Throws std::logic_error
/// when every class MI is indeterminate.
std::size_t first_feature(const MIProvider& p);

enum class HaltReason { AllSelected, NoAdmissibleCandidate };
std::string to_string(HaltReason h);

struct CandidateScore {
  std::size_t feature;
  XReal objective;
  bool admissible;  ///< false iff the objective is indeterminate
};

struct SelectionStep {
  std::vector<CandidateScore> candidates;  ///< unselected features, by index
  std::optional<std::size_t> winner;       ///< empty on the halting step
};

struct SelectionTrace {
  std::vector<std::size_t> selected;
  std::vector<SelectionStep> steps;
  HaltReason halt = HaltReason::AllSelected;
};

/// Sequential forward search until every feature is selected or every
/// remaining candidate is indeterminate.
SelectionTrace select_all(const MethodSpec& m, const MIProvider& p);

/// "X X2 Y2 Z2 X-Y | halt: no admissible candidate".
std::string summary_line(const SelectionTrace& t, const MIProvider& p);
/// TSV with columns step, feature, objective, admissible, selected.
void write_trace_tsv(std::ostream& out, const SelectionTrace& t, const MIProvider& p);

}  // namespace mifslab
