#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ssx/domains.hpp"
#include "ssx/hyperboloid.hpp"
#include "ssx/matrix_core.hpp"
#include "ssx/rng.hpp"
#include "ssx/root_lattice.hpp"
#include "ssx/symmetric_pair.hpp"

namespace ssx::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

struct CommonOptions {
  std::string format = "json";  // json | text | csv (csv: levi-table only)
  std::string output;           // empty: stdout
};

struct ModelOptions {
  int p = 3;
  int q = 2;
  std::string tau_signs;  // comma-separated +-1; default: single flip at end
};

std::vector<int> parse_tau_signs(const ModelOptions& options) {
  const int n = options.p + options.q;
  std::vector<int> signs;
  if (options.tau_signs.empty()) {
    signs.assign(n, 1);
    signs.back() = -1;
    return signs;
  }
  std::stringstream stream(options.tau_signs);
  std::string item;
  while (std::getline(stream, item, ',')) {
    signs.push_back(std::stoi(item));
  }
  return signs;
}

SymmetricPairModel build_model(const ModelOptions& options) {
  return build_so_pair(options.p, options.q, parse_tau_signs(options));
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) values.push_back(std::stod(item));
  return values;
}

std::string format_number(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

json tolerance_block() {
  json t;
  t["membership"] = 1e-10;
  t["margin"] = kTolMargin;
  t["collision"] = 1e-8;
  t["certificate"] = 1e-7;
  t["quadric_residual"] = 1e-9;
  t["signature_zero_band"] = 1e-8;
  t["exp_identity"] = 1e-10;
  t["formula_match"] = 1e-9;
  return t;
}

struct Report {
  json doc;
  bool pass = true;

  explicit Report(const std::string& command) {
    doc["schema_version"] = 1;
    doc["command"] = command;
    doc["tolerances"] = tolerance_block();
    doc["claims"] = json::array();
  }

  json& add(const std::string& id, bool claim_pass) {
    json claim;
    claim["id"] = id;
    claim["pass"] = claim_pass;
    doc["claims"].push_back(std::move(claim));
    pass = pass && claim_pass;
    return doc["claims"].back();
  }

  void finish() { doc["pass"] = pass; }
};

void render_text(const Report& report, std::ostream& out) {
  out << "command: " << report.doc["command"].get<std::string>() << "\n";
  for (const json& claim : report.doc["claims"]) {
    out << (claim["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
        << claim["id"].get<std::string>();
    json detail = claim;
    detail.erase("id");
    detail.erase("pass");
    if (!detail.empty()) out << " " << detail.dump();
    out << "\n";
  }
  out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
}

int emit(Report& report, const CommonOptions& common, std::ostream& out,
         std::ostream& err, const std::string& csv = std::string()) {
  report.finish();
  std::ostringstream body;
  if (common.format == "json") {
    body << report.doc.dump(2) << "\n";
  } else if (common.format == "text") {
    render_text(report, body);
  } else if (common.format == "csv") {
    if (csv.empty()) {
      err << "csv format is not available for this command\n";
      return 2;
    }
    body << csv;
  } else {
    err << "unknown format: " << common.format << "\n";
    return 2;
  }
  if (common.output.empty()) {
    out << body.str();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file: " << common.output << "\n";
      return 2;
    }
    file << body.str();
  }
  return report.pass ? 0 : 1;
}

json model_config(const ModelOptions& options) {
  json config;
  config["p"] = options.p;
  config["q"] = options.q;
  config["tau_signs"] = parse_tau_signs(options);
  return config;
}

// ---------------------------------------------------------------------------

int cmd_omega_check(const CommonOptions& common, const ModelOptions& model_opts,
                    const std::string& scales_csv, std::ostream& out,
                    std::ostream& err) {
  Report report("omega-check");
  report.doc["config"] = model_config(model_opts);
  report.doc["config"]["scales"] = scales_csv;

  const SymmetricPairModel pair = build_model(model_opts);
  const CartanSubspaceData& a = cartan_subspace(pair, CartanKind::Noncompact);
  const RealMatrix A0 = a.generators[0].matrix;

  for (double scale : parse_doubles(scales_csv)) {
    const RealMatrix X = scale * A0;
    const DomainReport omega = omega_report(pair, X);
    const DomainReport omega_prime = omega_prime_report(pair, X);
    const DomainReport omega_zero = omega_zero_report(pair, X);

    json& status = report.add("omega_status_scale_" + format_number(scale),
                              true);
    status["scale"] = scale;
    status["omega"] = to_string(omega.status);
    status["omega_margin"] = omega.margin;
    status["omega_prime"] = to_string(omega_prime.status);
    status["omega_prime_margin"] = omega_prime.margin;
    status["omega_zero"] = to_string(omega_zero.status);

    const bool prime_subset =
        omega_prime.status != MembershipStatus::In ||
        omega.status == MembershipStatus::In;
    report.add("omega_prime_subset_omega_scale_" + format_number(scale),
               prime_subset);

    const bool zero_consistent = omega_zero.status == omega.status;
    report.add("omega_zero_consistent_scale_" + format_number(scale),
               zero_consistent);
  }
  return emit(report, common, out, err);
}

int cmd_regularity(const CommonOptions& common, const ModelOptions& model_opts,
                   int samples, std::uint64_t seed, std::ostream& out,
                   std::ostream& err) {
  Report report("regularity");
  report.doc["config"] = model_config(model_opts);
  report.doc["config"]["samples"] = samples;
  report.doc["config"]["seed"] = seed;

  const SymmetricPairModel pair = build_model(model_opts);
  long long agreements = 0, disagreements = 0, indeterminate = 0;
  long long omega_irregular = 0, omega_count = 0;
  for (int k = 0; k < samples; ++k) {
    std::mt19937_64 rng = stream_engine(seed, static_cast<std::uint64_t>(k));
    const RealMatrix X = sample_q_element(pair, rng, 1.2);
    const RegularityVerdict verdict = dphi_regular(pair, X);
    if (verdict.indeterminate) {
      ++indeterminate;
      continue;
    }
    if (verdict.dphi_regular_spectral == verdict.dphi_regular_cosine) {
      ++agreements;
    } else {
      ++disagreements;
    }
    if (verdict.in_omega) {
      ++omega_count;
      if (!verdict.dphi_regular_spectral) ++omega_irregular;
    }
  }

  json& agreement = report.add("regularity_route_agreement",
                               disagreements == 0);
  agreement["samples"] = samples;
  agreement["agreements"] = agreements;
  agreement["disagreements"] = disagreements;
  agreement["indeterminate"] = indeterminate;

  json& inclusion = report.add("omega_elements_regular", omega_irregular == 0);
  inclusion["omega_samples"] = omega_count;
  inclusion["irregular"] = omega_irregular;
  return emit(report, common, out, err);
}

int cmd_orbit_classify(const CommonOptions& common, int p, int q,
                       const std::string& slice, const std::string& params_csv,
                       int translates, std::uint64_t seed, std::ostream& out,
                       std::ostream& err) {
  Report report("orbit-classify");
  report.doc["config"]["p"] = p;
  report.doc["config"]["q"] = q;
  report.doc["config"]["slice"] = slice;
  report.doc["config"]["parameters"] = params_csv;
  report.doc["config"]["translates"] = translates;
  report.doc["config"]["seed"] = seed;

  SliceKind kind;
  OrbitLabel expected;
  if (slice == "Q") {
    kind = SliceKind::Q;
    expected = OrbitLabel::ClosedQ;
  } else if (slice == "P") {
    kind = SliceKind::P;
    expected = OrbitLabel::ClosedP;
  } else if (slice == "R") {
    kind = SliceKind::R;
    expected = OrbitLabel::ClosedR;
  } else {
    err << "unknown slice kind: " << slice << "\n";
    return 2;
  }

  // Group translates act through the associated quadric-model pair.
  const ModelOptions model_opts{p, q, std::string()};
  const SymmetricPairModel pair = build_model(model_opts);

  for (double parameter : parse_doubles(params_csv)) {
    const QuadricPoint pt = slice_point(p, q, kind, parameter);
    const OrbitReport orbit = classify_orbit(pt);
    json& claim = report.add(
        "orbit_label_" + slice + "_" + format_number(parameter),
        orbit.label == expected);
    claim["label"] = to_string(orbit.label);
    claim["F"] = orbit.F;

    // The classifier's parameter is canonical up to sign (s <= 0 on Q).
    const double recovered = std::abs(orbit.parameter);
    const double reference = std::abs(parameter);
    json& recovery = report.add(
        "orbit_parameter_recovery_" + slice + "_" + format_number(parameter),
        std::abs(recovered - reference) < 1e-9);
    recovery["recovered"] = recovered;

    bool translates_consistent = true;
    for (int t = 0; t < translates; ++t) {
      std::mt19937_64 rng = stream_engine(seed, static_cast<std::uint64_t>(t));
      const RealMatrix g = sample_group_element(pair, rng, 2.0);
      const QuadricPoint moved =
          make_quadric_point(p, q, g.cast<Complex>() * pt.z);
      const OrbitReport moved_orbit = classify_orbit(moved);
      if (moved_orbit.label != orbit.label ||
          std::abs(moved_orbit.parameter - orbit.parameter) > 1e-7) {
        translates_consistent = false;
      }
    }
    report.add(
        "orbit_translate_invariance_" + slice + "_" + format_number(parameter),
        translates_consistent);
  }
  return emit(report, common, out, err);
}

int cmd_f_table(const CommonOptions& common, int p, int q, int translates,
                std::uint64_t seed, std::ostream& out, std::ostream& err) {
  Report report("f-table");
  report.doc["config"]["p"] = p;
  report.doc["config"]["q"] = q;
  report.doc["config"]["translates"] = translates;
  report.doc["config"]["seed"] = seed;

  const ModelOptions model_opts{p, q, std::string()};
  const SymmetricPairModel pair = build_model(model_opts);

  const std::vector<double> s_grid{-1.5, -1.0, -0.5};
  const std::vector<double> t_grid{kPi / 6.0, kPi / 4.0, kPi / 3.0};
  const std::vector<double> sigma_grid{0.5, 1.0, 1.5};

  double max_q = -1e300, min_p = 1e300, max_p = -1e300, min_r = 1e300;
  json rows = json::array();

  auto check_point = [&](SliceKind kind, double parameter, double closed_form,
                         const char* label) {
    const QuadricPoint pt = slice_point(p, q, kind, parameter);
    const double F = F_invariant(pt);
    json row;
    row["slice"] = label;
    row["parameter"] = parameter;
    row["F"] = F;
    rows.push_back(row);
    json& formula = report.add(std::string("f_closed_form_") + label + "_" +
                                   format_number(parameter),
                               std::abs(F - closed_form) < 1e-9);
    formula["F"] = F;
    formula["expected"] = closed_form;

    bool invariant = true;
    for (int t = 0; t < translates; ++t) {
      std::mt19937_64 rng = stream_engine(seed, static_cast<std::uint64_t>(t));
      const RealMatrix g = sample_group_element(pair, rng, 2.0);
      const QuadricPoint moved =
          make_quadric_point(p, q, g.cast<Complex>() * pt.z);
      if (std::abs(F_invariant(moved) - F) > 1e-9 * (1.0 + std::abs(F))) {
        invariant = false;
      }
    }
    report.add(std::string("f_translate_invariance_") + label + "_" +
                   format_number(parameter),
               invariant);
    return F;
  };

  for (double s : s_grid) {
    const double F = check_point(SliceKind::Q, s, -std::cosh(2.0 * s), "Q");
    max_q = std::max(max_q, F);
  }
  for (double t : t_grid) {
    const double F = check_point(SliceKind::P, t, -std::cos(2.0 * t), "P");
    min_p = std::min(min_p, F);
    max_p = std::max(max_p, F);
  }
  for (double sigma : sigma_grid) {
    const double F =
        check_point(SliceKind::R, sigma, std::cosh(2.0 * sigma), "R");
    min_r = std::min(min_r, F);
  }
  report.doc["rows"] = rows;

  json& ordering = report.add(
      "f_separates_orbit_families",
      max_q < -1.0 - 1e-6 && min_p > -1.0 + 1e-6 && max_p < 1.0 - 1e-6 &&
          min_r > 1.0 + 1e-6);
  ordering["max_Q"] = max_q;
  ordering["min_P"] = min_p;
  ordering["max_P"] = max_p;
  ordering["min_R"] = min_r;
  return emit(report, common, out, err);
}

struct LeviRow {
  std::string stratum;
  double parameter = 0.0;
  double F = 0.0;
  SignatureTriple triple;
};

QuadricPoint nilpotent_n_point(int p, int q, double a) {
  const int n = p + q;
  ComplexVector z = ComplexVector::Zero(n);
  z[0] = Complex{0.0, a};
  z[n - 2] = Complex{0.0, a};
  z[n - 1] = Complex{1.0, 0.0};
  return make_quadric_point(p, q, z);
}

QuadricPoint nilpotent_m_point(int p, int q, double b) {
  const int n = p + q;
  ComplexVector z = ComplexVector::Zero(n);
  z[0] = Complex{0.0, 1.0};
  z[1] = Complex{b, 0.0};
  z[n - 1] = Complex{b, 0.0};
  return make_quadric_point(p, q, z);
}

int cmd_levi_table(const CommonOptions& common, int p, int q,
                   std::ostream& out, std::ostream& err) {
  Report report("levi-table");
  report.doc["config"]["p"] = p;
  report.doc["config"]["q"] = q;

  std::vector<LeviRow> rows;
  auto run_stratum = [&](const std::string& stratum, double parameter,
                         const QuadricPoint& pt, LevelFunction level,
                         int expect_pos, int expect_neg, int expect_zero) {
    LeviRow row;
    row.stratum = stratum;
    row.parameter = parameter;
    row.F = F_invariant(pt);
    row.triple = levi_signature(pt, level);
    rows.push_back(row);
    const bool ok = row.triple.n_pos == expect_pos &&
                    row.triple.n_neg == expect_neg &&
                    row.triple.n_zero == expect_zero;
    json& claim = report.add("levi_" + stratum + "_" +
                                 format_number(parameter),
                             ok);
    claim["F"] = row.F;
    claim["signature"] = {row.triple.n_pos, row.triple.n_neg,
                          row.triple.n_zero};
    claim["expected"] = {expect_pos, expect_neg, expect_zero};
  };

  for (double s : {-1.5, -1.0, -0.5}) {
    run_stratum("plusF_Q", s, slice_point(p, q, SliceKind::Q, s),
                LevelFunction::PlusF, p, q - 2, 0);
  }
  for (double R : {-0.5, 0.0, 0.5}) {
    const double t = std::acos(std::sqrt((1.0 - R) / 2.0));
    run_stratum("plusF_dD_R", R, slice_point(p, q, SliceKind::P, t),
                LevelFunction::PlusF, p - 1, q - 1, 0);
  }
  for (double sigma : {0.5, 1.0, 1.5}) {
    run_stratum("plusF_R", sigma, slice_point(p, q, SliceKind::R, sigma),
                LevelFunction::PlusF, p - 2, q, 0);
  }
  for (double a : {0.5, 1.0, 1.5}) {
    run_stratum("plusF_n", a, nilpotent_n_point(p, q, a),
                LevelFunction::PlusF, p - 1, q - 2, 1);
  }
  for (double b : {0.5, 1.0, 1.5}) {
    run_stratum("plusF_m", b, nilpotent_m_point(p, q, b),
                LevelFunction::PlusF, p - 2, q - 1, 1);
  }
  // MinusF flips the signature.
  for (double s : {-1.5, -1.0, -0.5}) {
    run_stratum("minusF_Q", s, slice_point(p, q, SliceKind::Q, s),
                LevelFunction::MinusF, q - 2, p, 0);
  }
  for (double b : {0.5, 1.0, 1.5}) {
    run_stratum("minusF_m", b, nilpotent_m_point(p, q, b),
                LevelFunction::MinusF, q - 1, p - 2, 1);
  }

  std::ostringstream csv;
  csv << "p,q,stratum,parameter,F,n_pos,n_neg,n_zero\n";
  csv.precision(17);
  for (const LeviRow& row : rows) {
    csv << p << "," << q << "," << row.stratum << "," << row.parameter << ","
        << row.F << "," << row.triple.n_pos << "," << row.triple.n_neg << ","
        << row.triple.n_zero << "\n";
  }
  return emit(report, common, out, err, csv.str());
}

int cmd_kahler_signature(const CommonOptions& common, int p, int q,
                         const std::string& t_csv, const std::string& s_csv,
                         std::ostream& out, std::ostream& err) {
  Report report("kahler-signature");
  report.doc["config"]["p"] = p;
  report.doc["config"]["q"] = q;
  report.doc["config"]["t_values"] = t_csv;
  report.doc["config"]["s_values"] = s_csv;

  auto check = [&](const char* label, double parameter,
                   const QuadricPoint& pt) {
    const SignatureTriple triple = kahler_hessian_signature(pt);
    const bool ok =
        triple.n_pos == p && triple.n_neg == q - 1 && triple.n_zero == 0;
    json& claim = report.add(std::string("kahler_signature_") + label + "_" +
                                 format_number(parameter),
                             ok);
    claim["signature"] = {triple.n_pos, triple.n_neg, triple.n_zero};
    claim["expected"] = {p, q - 1, 0};
  };
  for (double t : parse_doubles(t_csv)) {
    check("P", t, slice_point(p, q, SliceKind::P, t));
  }
  for (double s : parse_doubles(s_csv)) {
    check("Q", s, slice_point(p, q, SliceKind::Q, s));
  }
  return emit(report, common, out, err);
}

int cmd_ma_residual(const CommonOptions& common, int p, int q,
                    const std::string& t_csv, const std::string& s_csv,
                    std::ostream& out, std::ostream& err) {
  Report report("ma-residual");
  report.doc["config"]["p"] = p;
  report.doc["config"]["q"] = q;
  report.doc["config"]["t_values"] = t_csv;
  report.doc["config"]["s_values"] = s_csv;

  auto check = [&](const char* label, double parameter,
                   const QuadricPoint& pt) {
    const double residual = monge_ampere_residual(pt);
    const double contrast = energy_hessian_residual(pt);
    json& degenerate = report.add(
        std::string("ma_degenerate_direction_") + label + "_" +
            format_number(parameter),
        residual < 1e-6);
    degenerate["residual"] = residual;
    json& control = report.add(std::string("energy_hessian_contrast_") +
                                   label + "_" + format_number(parameter),
                               contrast > 1e-2);
    control["contrast"] = contrast;
  };
  for (double t : parse_doubles(t_csv)) {
    check("P", t, slice_point(p, q, SliceKind::P, t));
  }
  for (double s : parse_doubles(s_csv)) {
    check("Q", s, slice_point(p, q, SliceKind::Q, s));
  }
  return emit(report, common, out, err);
}

int cmd_injectivity(const CommonOptions& common, const ModelOptions& model_opts,
                    const std::string& domain, long long samples,
                    std::uint64_t seed, int constructed, bool inject_witness,
                    std::ostream& out, std::ostream& err) {
  Report report("injectivity");
  report.doc["config"] = model_config(model_opts);
  report.doc["config"]["domain"] = domain;
  report.doc["config"]["samples"] = samples;
  report.doc["config"]["seed"] = seed;
  report.doc["config"]["constructed"] = constructed;
  report.doc["config"]["inject_witness"] = inject_witness;

  const SymmetricPairModel pair = build_model(model_opts);
  TrialConfig config;
  if (domain == "omega") {
    config.domain = TrialDomain::Omega;
  } else if (domain == "omega-prime") {
    config.domain = TrialDomain::OmegaPrime;
  } else {
    err << "unknown domain: " << domain << "\n";
    return 2;
  }
  config.n_samples = samples;
  config.seed = seed;
  config.constructed_equivalents = constructed;
  config.inject_witness = inject_witness;

  const TrialReport trial = injectivity_trial(pair, config);

  json& collisions = report.add("no_nonequivalent_collisions",
                                trial.nonequivalent_collisions == 0);
  collisions["collisions"] = trial.collisions;
  collisions["equivalent"] = trial.equivalent_collisions;
  collisions["nonequivalent"] = trial.nonequivalent_collisions;
  collisions["filtered_by_fourth_power"] = trial.filtered_by_fourth_power;
  collisions["rejected_samples"] = trial.rejected_samples;

  json& constructed_claim = report.add(
      "constructed_equivalents_collide",
      trial.constructed_collisions == trial.constructed_pairs);
  constructed_claim["pairs"] = trial.constructed_pairs;
  constructed_claim["collisions"] = trial.constructed_collisions;

  report.add("constructed_certificates_pass",
             trial.constructed_certificates_passed == trial.constructed_pairs);

  if (inject_witness) {
    json& witness = report.add("witness_collides_without_certificate",
                               trial.witness_injected &&
                                   trial.witness_collided &&
                                   trial.witness_certificate_failed &&
                                   trial.witness_fourth_power_passed);
    witness["collided"] = trial.witness_collided;
    witness["certificate_failed"] = trial.witness_certificate_failed;
    witness["fourth_power_passed"] = trial.witness_fourth_power_passed;
    witness["translate_in_domain"] = trial.witness_translate_in_domain;
  }
  return emit(report, common, out, err);
}

int cmd_lattice_verify(const CommonOptions& common, const std::string& family,
                       int n, const std::string& involution, std::ostream& out,
                       std::ostream& err) {
  Report report("lattice-verify");
  report.doc["config"]["family"] = family;
  report.doc["config"]["n"] = n;
  report.doc["config"]["involution"] = involution;

  LatticeType type;
  if (family == "A") {
    type = LatticeType::A;
  } else if (family == "B") {
    type = LatticeType::B;
  } else if (family == "D") {
    type = LatticeType::D;
  } else if (family == "E") {
    type = LatticeType::E;
  } else {
    err << "unknown lattice family: " << family << "\n";
    return 2;
  }
  const InvolutionKind kind = involution == "flip"
                                  ? InvolutionKind::DiagramFlip
                                  : InvolutionKind::Identity;

  if (type == LatticeType::B) {
    for (int index = 1; index <= n; ++index) {
      const LongRootMinimalityReport row =
          verify_long_root_minimality(n, index);
      json& claim = report.add(
          "long_root_rule_index_" + std::to_string(index),
          row.matches_long_root_rule);
      claim["is_shortest"] = row.is_shortest;
      claim["expected_shortest"] = index < n;
    }
    return emit(report, common, out, err);
  }

  GramLattice lattice = build_coroot_lattice(type, n);
  set_involution(lattice, kind);
  const GeneratorMinimalityReport result =
      verify_generator_minimality(lattice);
  const std::string id = result.hypothesis_ok
                             ? "generator_minimality"
                             : "hypothesis_violation_detected";
  json& claim = report.add(id, result.passed);
  claim["lattice"] = result.lattice_name;
  claim["involution"] = result.involution_name;
  claim["hypothesis_ok"] = result.hypothesis_ok;
  claim["hypothesis_violations"] = result.hypothesis_violations;
  claim["min_norm_sq"] = result.min_norm_sq;
  claim["minimal_vector_count"] = result.minimal_vector_count;
  claim["generators_minimal"] = result.generators_minimal;
  claim["difference_lines_minimal"] = result.difference_lines_minimal;
  return emit(report, common, out, err);
}

int cmd_rank1_catalog(const CommonOptions& common, std::ostream& out,
                      std::ostream& err) {
  Report report("rank1-catalog");

  const std::vector<RankOneFamily>& catalog = rank_one_catalog();
  json rows = json::array();
  int supported = 0;
  for (const RankOneFamily& family : catalog) {
    json row;
    row["pair"] = family.pair_name;
    row["restricted_type"] = to_string(family.restricted_type);
    row["supported_model"] = family.supported_model;
    row["note"] = family.note;
    rows.push_back(row);
    if (family.supported_model) ++supported;
  }
  report.doc["rows"] = rows;

  json& support = report.add("catalog_has_single_supported_family",
                             supported == 1);
  support["rows"] = catalog.size();
  support["supported"] = supported;

  bool builds = true;
  for (const auto& [p, q] : {std::pair<int, int>{2, 2}, {3, 2}, {2, 3}}) {
    std::vector<int> signs(p + q, 1);
    signs.back() = -1;
    const SymmetricPairModel pair = build_so_pair(p, q, signs);
    const CartanSubspaceData& a =
        cartan_subspace(pair, CartanKind::Noncompact);
    if (a.restricted_type != RestrictedType::A1 || !pair.is_quadric_model ||
        a.m_alpha != p + q - 2 || a.m_2alpha != 0) {
      builds = false;
    }
  }
  report.add("supported_family_builds_with_reduced_roots", builds);
  return emit(report, common, out, err);
}

int cmd_collision_witness(const CommonOptions& common,
                          const ModelOptions& model_opts, std::ostream& out,
                          std::ostream& err) {
  Report report("collision-witness");
  report.doc["config"] = model_config(model_opts);

  const SymmetricPairModel pair = build_model(model_opts);
  const CollisionWitness witness = higher_rank_collision_witness(pair);

  json& exp_claim = report.add("translate_exponentiates_identically",
                               witness.clause_exp_match);
  exp_claim["exp_match_error"] = witness.exp_match_error;
  exp_claim["exp_gamma_error"] = witness.exp_gamma_error;
  exp_claim["tau_negates_gamma"] = witness.tau_negates_gamma;
  exp_claim["theta_negates_gamma"] = witness.theta_negates_gamma;

  json& omega_claim = report.add("both_points_inside_omega",
                                 witness.clause_both_in_omega);
  omega_claim["x_omega"] = to_string(witness.x_omega);
  omega_claim["translate_omega"] = to_string(witness.x_gamma_omega);
  omega_claim["has_complex_roots"] = witness.has_complex_roots;

  json& energy_claim = report.add("energy_invariant_separates",
                                  witness.clause_energy_separated);
  energy_claim["energy_x"] = witness.energy_x;
  energy_claim["energy_translate"] = witness.energy_x_gamma;
  energy_claim["separation"] = witness.energy_separation;

  json& outside_claim = report.add(
      "translate_outside_omega_prime",
      witness.clause_translate_outside_omega_prime);
  outside_claim["x_omega_prime"] = to_string(witness.x_omega_prime);
  outside_claim["translate_omega_prime"] =
      to_string(witness.x_gamma_omega_prime);
  return emit(report, common, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Verification toolkit for complexified symmetric space models"};
  app.require_subcommand(1);

  CommonOptions common;
  ModelOptions model_opts;
  std::string scales = "0.5,1.0,1.5,1.6";
  int samples = 400;
  long long trial_samples = 1000;
  std::uint64_t seed = 0;
  int p = 3, q = 3;
  std::string slice = "P";
  std::string parameters = "0.5,1.0";
  int translates = 3;
  std::string t_values = "0.3,0.5,0.8,1.2";
  std::string s_values = "-1.2,-0.8,-0.4";
  std::string domain = "omega";
  int constructed = 100;
  bool inject_witness = false;
  std::string family = "A";
  int lattice_n = 3;
  std::string involution = "identity";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format,
                    "Output format: json, text, or csv (levi-table only)");
    sub->add_option("--output", common.output, "Write the report to a file");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--p", model_opts.p, "Positive part of the signature");
    sub->add_option("--q", model_opts.q, "Negative part of the signature");
    sub->add_option("--tau-signs", model_opts.tau_signs,
                    "Comma-separated +-1 diagonal of the second involution");
  };

  int exit_code = 0;

  CLI::App* omega = app.add_subcommand(
      "omega-check", "Domain membership along the noncompact generator");
  add_common(omega);
  add_model(omega);
  omega->add_option("--scales", scales, "Comma-separated generator multiples");
  omega->callback([&]() {
    exit_code = cmd_omega_check(common, model_opts, scales, out, err);
  });

  CLI::App* regularity = app.add_subcommand(
      "regularity", "Spectral vs cosine-kernel regularity route agreement");
  add_common(regularity);
  add_model(regularity);
  regularity->add_option("--samples", samples, "Random sample count");
  regularity->add_option("--seed", seed, "Random seed");
  regularity->callback([&]() {
    exit_code = cmd_regularity(common, model_opts, samples, seed, out, err);
  });

  CLI::App* orbit = app.add_subcommand(
      "orbit-classify", "Classify slice points and check orbit invariants");
  add_common(orbit);
  orbit->add_option("--p", p, "Positive part of the signature");
  orbit->add_option("--q", q, "Negative part of the signature");
  orbit->add_option("--slice", slice, "Slice family: Q, P, or R");
  orbit->add_option("--parameters", parameters, "Comma-separated parameters");
  orbit->add_option("--translates", translates, "Group translates per point");
  orbit->add_option("--seed", seed, "Random seed");
  orbit->callback([&]() {
    exit_code = cmd_orbit_classify(common, p, q, slice, parameters, translates,
                                   seed, out, err);
  });

  CLI::App* f_table = app.add_subcommand(
      "f-table", "Closed-form values of the orbit-separating invariant");
  add_common(f_table);
  f_table->add_option("--p", p, "Positive part of the signature");
  f_table->add_option("--q", q, "Negative part of the signature");
  f_table->add_option("--translates", translates, "Group translates");
  f_table->add_option("--seed", seed, "Random seed");
  f_table->callback([&]() {
    exit_code = cmd_f_table(common, p, q, translates, seed, out, err);
  });

  CLI::App* levi = app.add_subcommand(
      "levi-table", "Boundary Levi signatures per stratum");
  add_common(levi);
  levi->add_option("--p", p, "Positive part of the signature");
  levi->add_option("--q", q, "Negative part of the signature");
  levi->callback([&]() {
    exit_code = cmd_levi_table(common, p, q, out, err);
  });

  CLI::App* kahler = app.add_subcommand(
      "kahler-signature", "Complex Hessian signature of the domain potential");
  add_common(kahler);
  kahler->add_option("--p", p, "Positive part of the signature");
  kahler->add_option("--q", q, "Negative part of the signature");
  kahler->add_option("--t-values", t_values, "P-slice parameters");
  kahler->add_option("--s-values", s_values, "Q-slice parameters");
  kahler->callback([&]() {
    exit_code = cmd_kahler_signature(common, p, q, t_values, s_values, out,
                                     err);
  });

  CLI::App* ma = app.add_subcommand(
      "ma-residual", "Degenerate direction of the square-root potential");
  add_common(ma);
  ma->add_option("--p", p, "Positive part of the signature");
  ma->add_option("--q", q, "Negative part of the signature");
  ma->add_option("--t-values", t_values, "P-slice parameters");
  ma->add_option("--s-values", s_values, "Q-slice parameters");
  ma->callback([&]() {
    exit_code = cmd_ma_residual(common, p, q, t_values, s_values, out, err);
  });

  CLI::App* injectivity = app.add_subcommand(
      "injectivity", "Randomized injectivity trials with certificates");
  add_common(injectivity);
  add_model(injectivity);
  injectivity->add_option("--domain", domain, "omega or omega-prime");
  injectivity->add_option("--samples", trial_samples, "Random pair count");
  injectivity->add_option("--seed", seed, "Random seed");
  injectivity->add_option("--constructed", constructed,
                          "Constructed equivalent pairs");
  injectivity->add_flag("--inject-witness", inject_witness,
                        "Also evaluate the higher-rank collision witness");
  injectivity->callback([&]() {
    exit_code = cmd_injectivity(common, model_opts, domain, trial_samples,
                                seed, constructed, inject_witness, out, err);
  });

  CLI::App* lattice = app.add_subcommand(
      "lattice-verify", "Exact minimality checks on coroot lattices");
  add_common(lattice);
  lattice->add_option("--family", family, "Lattice family: A, B, D, or E");
  lattice->add_option("--n", lattice_n, "Rank");
  lattice->add_option("--involution", involution, "identity or flip");
  lattice->callback([&]() {
    exit_code =
        cmd_lattice_verify(common, family, lattice_n, involution, out, err);
  });

  CLI::App* catalog = app.add_subcommand(
      "rank1-catalog", "Rank-one families and model support status");
  add_common(catalog);
  catalog->callback([&]() {
    exit_code = cmd_rank1_catalog(common, out, err);
  });

  CLI::App* witness = app.add_subcommand(
      "collision-witness", "Higher-rank collision witness clause checks");
  add_common(witness);
  ModelOptions witness_opts{3, 3, std::string()};
  witness->add_option("--p", witness_opts.p, "Positive part");
  witness->add_option("--q", witness_opts.q, "Negative part");
  witness->add_option("--tau-signs", witness_opts.tau_signs,
                      "Second involution diagonal");
  witness->callback([&]() {
    if (witness_opts.tau_signs.empty() && witness_opts.p == 3 &&
        witness_opts.q == 3) {
      witness_opts.tau_signs = "-1,-1,1,-1,1,1";
    }
    exit_code = cmd_collision_witness(common, witness_opts, out, err);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ssx");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help() << "\n";
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace ssx::cli
