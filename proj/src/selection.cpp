#include "mifslab/selection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "mifslab/infotheory.hpp"

namespace mifslab {

namespace {

constexpr MethodKind kAllKinds[] = {MethodKind::MIFS,  MethodKind::MIFSU, MethodKind::MRMR,
                                    MethodKind::MMIFSU, MethodKind::MICC, MethodKind::QMIFS,
                                    MethodKind::NMIFS, MethodKind::MAXMIFS};

XReal fin(double v) { return XReal::finite(v); }

// MI(C, V_s) / h(V_s): the MIFS-U redundancy weight.
XReal uncertainty_weight(const MIProvider& p, std::size_t s) {
  return xdiv(p.class_mi(s), p.entropy(s));
}

XReal normalized(const MIProvider& p, std::size_t i, std::size_t s) {
  return normalized_mi(p.pairwise_mi(i, s), p.entropy(i), p.entropy(s));
}

// phi_lm = MI(V_l, V_m) / h(V_m).
XReal phi(const MIProvider& p, std::size_t l, std::size_t m) {
  return xdiv(p.pairwise_mi(l, m), p.entropy(m));
}

template <typename Fn>
std::vector<XReal> over(const std::vector<std::size_t>& selected, Fn&& fn) {
  std::vector<XReal> out;
  out.reserve(selected.size());
  for (std::size_t s : selected) out.push_back(fn(s));
  return out;
}

}  // namespace

void MethodSpec::validate() const {
  if (takes_beta()) {
    if (!beta) throw std::invalid_argument(method_name(kind) + " requires beta");
    if (!(*beta >= 0.0 && *beta <= 1.0))
      throw std::invalid_argument(fmt::format("beta must lie in [0, 1] (got {})", *beta));
  } else if (beta) {
    throw std::invalid_argument(method_name(kind) + " does not take beta");
  }
}

std::string method_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::MIFS: return "mifs";
    case MethodKind::MIFSU: return "mifsu";
    case MethodKind::MRMR: return "mrmr";
    case MethodKind::MMIFSU: return "mmifsu";
    case MethodKind::MICC: return "micc";
    case MethodKind::QMIFS: return "qmifs";
    case MethodKind::NMIFS: return "nmifs";
    case MethodKind::MAXMIFS: return "maxmifs";
  }
  throw std::invalid_argument("unknown method kind");
}

std::string display_name(const MethodSpec& m) {
  std::string base;
  switch (m.kind) {
    case MethodKind::MIFS: base = "MIFS"; break;
    case MethodKind::MIFSU: base = "MIFS-U"; break;
    case MethodKind::MRMR: base = "mRMR"; break;
    case MethodKind::MMIFSU: base = "mMIFS-U"; break;
    case MethodKind::MICC: base = "MICC"; break;
    case MethodKind::QMIFS: base = "QMIFS"; break;
    case MethodKind::NMIFS: base = "NMIFS"; break;
    case MethodKind::MAXMIFS: base = "maxMIFS"; break;
  }
  return m.beta ? fmt::format("{}(beta={})", base, *m.beta) : base;
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (auto k : kAllKinds) out.push_back(method_name(k));
    return out;
  }();
  return names;
}

MethodKind parse_method_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::erase(lower, '-');
  for (auto k : kAllKinds)
    if (method_name(k) == lower) return k;
  throw std::invalid_argument(fmt::format("unknown method '{}'; valid methods: {}", name,
                                          fmt::join(method_names(), ", ")));
}

MethodSpec parse_method(std::string_view name, std::optional<double> beta) {
  MethodSpec m{parse_method_kind(name), beta};
  if (m.takes_beta() && !m.beta) m.beta = 1.0;
  m.validate();
  return m;
}

XReal objective(const MethodSpec& m, std::size_t i, const std::vector<std::size_t>& selected,
                const MIProvider& p) {
  if (selected.empty()) throw std::invalid_argument("objective needs at least one selected feature");
  const XReal rel = p.class_mi(i);
  const XReal inv_size = fin(1.0 / static_cast<double>(selected.size()));
  const auto mi_with = [&](std::size_t s) { return p.pairwise_mi(i, s); };

  switch (m.kind) {
    case MethodKind::MIFS:
      return xsub(rel, xmul(fin(m.beta.value()), xsum(over(selected, mi_with))));
    case MethodKind::MIFSU: {
      const auto terms = over(selected, [&](std::size_t s) {
        return xmul(uncertainty_weight(p, s), mi_with(s));
      });
      return xsub(rel, xmul(fin(m.beta.value()), xsum(terms)));
    }
    case MethodKind::MRMR:
      return xsub(rel, xmul(inv_size, xsum(over(selected, mi_with))));
    case MethodKind::MMIFSU: {
      const auto terms = over(selected, [&](std::size_t s) {
        return xmul(uncertainty_weight(p, s), mi_with(s));
      });
      return xsub(rel, xmax(terms));
    }
    case MethodKind::MICC: {
      const auto ni = over(selected, [&](std::size_t s) { return normalized(p, i, s); });
      const XReal mean_ni = xmul(inv_size, xsum(ni));
      return xsub(xdiv(rel, mean_ni), rel);
    }
    case MethodKind::QMIFS: {
      std::vector<XReal> terms;
      for (std::size_t k : selected) {
        std::vector<XReal> pair_terms;
        for (std::size_t j : selected)
          if (j != k) pair_terms.push_back(xmul(phi(p, i, j), phi(p, j, k)));
        const XReal bracket = xsub(phi(p, i, k), xmul(fin(0.5), xsum(pair_terms)));
        terms.push_back(xmul(bracket, p.class_mi(k)));
      }
      return xsub(rel, xsum(terms));
    }
    case MethodKind::NMIFS: {
      const auto ni = over(selected, [&](std::size_t s) { return normalized(p, i, s); });
      return xsub(rel, xmul(inv_size, xsum(ni)));
    }
    case MethodKind::MAXMIFS:
      return xsub(rel, xmax(over(selected, mi_with)));
  }
  throw std::invalid_argument("unknown method kind");
}

namespace {

// Best admissible candidate; the strict comparison keeps the smallest index on ties.
std::optional<std::size_t> best_of(const std::vector<CandidateScore>& candidates) {
  const CandidateScore* best = nullptr;
  for (const auto& c : candidates) {
    if (!c.admissible) continue;
    if (!best || xcompare(c.objective, best->objective) > 0) best = &c;
  }
  if (!best) return std::nullopt;
  return best->feature;
}

SelectionStep first_step(const MIProvider& p) {
  SelectionStep step;
  for (std::size_t i = 0; i < p.feature_count(); ++i) {
    const XReal v = p.class_mi(i);
    step.candidates.push_back({i, v, !v.is_indet()});
  }
  step.winner = best_of(step.candidates);
  return step;
}

}  // namespace

std::size_t first_feature(const MIProvider& p) {
  const auto step = first_step(p);
  if (!step.winner) throw std::logic_error("every class MI is indeterminate");
  return *step.winner;
}

std::string to_string(HaltReason h) {
  return h == HaltReason::AllSelected ? "all selected" : "no admissible candidate";
}

SelectionTrace select_all(const MethodSpec& m, const MIProvider& p) {
  m.validate();
  const std::size_t n = p.feature_count();
  SelectionTrace t;
  std::vector<bool> taken(n, false);
  while (t.selected.size() < n) {
    SelectionStep step;
    if (t.selected.empty()) {
      step = first_step(p);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const XReal v = objective(m, i, t.selected, p);
        step.candidates.push_back({i, v, !v.is_indet()});
      }
      step.winner = best_of(step.candidates);
    }
    const auto winner = step.winner;
    t.steps.push_back(std::move(step));
    if (!winner) {
      t.halt = HaltReason::NoAdmissibleCandidate;
      return t;
    }
    taken[*winner] = true;
    t.selected.push_back(*winner);
  }
  t.halt = HaltReason::AllSelected;
  return t;
}

std::string summary_line(const SelectionTrace& t, const MIProvider& p) {
  std::vector<std::string> names;
  for (std::size_t f : t.selected) names.push_back(p.feature_name(f));
  return fmt::format("{} | halt: {}", fmt::join(names, " "), to_string(t.halt));
}

void write_trace_tsv(std::ostream& out, const SelectionTrace& t, const MIProvider& p) {
  out << "step\tfeature\tobjective\tadmissible\tselected\n";
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    const auto& step = t.steps[s];
    for (const auto& c : step.candidates) {
      out << fmt::format("{}\t{}\t{}\t{}\t{}\n", s + 1, p.feature_name(c.feature),
                         to_string(c.objective), c.admissible ? "yes" : "no",
                         step.winner == c.feature ? "yes" : "no");
    }
  }
}

}  // namespace mifslab
