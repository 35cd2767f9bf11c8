#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylindex/fedosov.hpp"
#include "cylindex/oracle.hpp"
#include "cylindex/spec_io.hpp"
#include "cylindex/winding.hpp"

namespace cylindex {

/// δ₁ value (ind A⁻, ind A⁺), always in (minus, plus) order.
struct IndexPair {
  int ind_minus = 0;
  int ind_plus = 0;

  int on(Side s) const { return s == Side::Minus ? ind_minus : ind_plus; }
  IndexPair swapped() const { return {ind_plus, ind_minus}; }
  IndexPair operator-() const { return {-ind_minus, -ind_plus}; }
  friend IndexPair operator+(IndexPair a, IndexPair b) { return {a.ind_minus + b.ind_minus, a.ind_plus + b.ind_plus}; }
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

Json to_json(const IndexPair& pair);

struct PipelineConfig {
  EllipticityGrid ellipticity;
  int loop_samples = 64;
  int fedosov_resolution = 48;
  WindingOptions winding;
  FedosovOptions fedosov;
  /// Empty: OracleOptions::default_radii for the lattice dimension.
  std::vector<int> radii;
  /// Unset: OracleOptions::defaults for the lattice dimension.
  std::optional<double> tol;
  double gap = 1e3;
  bool allow_large = false;

  OracleOptions oracle_options(int dim) const;
  std::vector<int> oracle_radii(int dim) const;
};

/// Topological index of one boundary symbol: the Noether winding difference
/// of its τ = −1 and τ = +1 loops (point base) or its odd Chern integral on
/// S*(T²) (circle base).
int topological_index(const OperatorSpec& spec, Side side, const PipelineConfig& config = {});

/// Oracle sweep of the full-order boundary operator on one side.
IndexResult analytic_index(const OperatorSpec& spec, Side side, const PipelineConfig& config = {});

/// Throws NotElliptic, otherwise propagates the route errors with the side named.
IndexPair delta1_topological(const OperatorSpec& spec, const PipelineConfig& config = {});
IndexPair delta1_analytic(const OperatorSpec& spec, const PipelineConfig& config = {});

struct AgreementReport {
  std::string spec_hash;
  bool elliptic = false;
  double margin = 0.0;
  std::optional<IndexPair> topological;
  std::optional<IndexPair> analytic;
  bool agree = false;
  std::vector<std::string> diagnostics;
  double topological_seconds = 0.0;
  double analytic_seconds = 0.0;
};

/// Runs both routes; failures become report content.
AgreementReport verify_agreement(const OperatorSpec& spec, const PipelineConfig& config = {});

/// {spec_hash, elliptic, margin, pairs: {topological, analytic}, agree, diagnostics}.
/// Runtimes are appended only on request, so default reports are reproducible byte for byte.
Json to_json(const AgreementReport& report, bool include_runtimes = false);

}  // namespace cylindex
