#include "miquel/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "miquel/elliptic_law.hpp"
#include "miquel/error.hpp"
#include "miquel/measure.hpp"
#include "miquel/quartic.hpp"

namespace miquel::cli {

namespace {

constexpr int kBasePoints = 5;
constexpr int kCirclesPerBasePoint = 50;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidInput, std::string("cannot parse ") + what + " \"" + text + "\"");
  return v;
}

std::array<double, 5> parse_abscissas(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_number(item, "abscissa"));
  if (values.size() != 5 || text.empty() || text.back() == ',')
    throw Error(ErrorCode::InvalidInput, "expected five comma-separated abscissas b,d,e,f,h");
  return {values[0], values[1], values[2], values[3], values[4]};
}

Json load_document(const RunConfig& config) {
  if (config.input.empty()) throw Error(ErrorCode::InvalidInput, "an input file is required (-i)");
  return parse_text(read_file(config.input));
}

Pattern22 load_pattern(const RunConfig& config) { return pattern_from_json(load_document(config), config.tol); }

Json quartic_coefficients(const MiquelQuartic& q) {
  return Json{{"a", q.a}, {"b", q.b}, {"c", q.c}};
}

Json error_json(const Error& e) {
  return Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", exit_code(e.code())}};
}

Json conserved_json(const ConservedQuantities& c) {
  return Json{{"A", point_json(c.A)},
              {"C", point_json(c.C)},
              {"G", point_json(c.G)},
              {"I", point_json(c.I)},
              {"angle_CBA", c.angle_CBA},
              {"angle_ADG", c.angle_ADG}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Group translation E -> E + 2(A - C) on the quartic of the starting pattern.
struct Translation {
  GroupLaw law;
  GroupPoint step;

  static std::optional<Translation> of(const Pattern22& S, const MiquelQuartic& q, std::string& why) {
    try {
      const GroupLaw law(q);
      const GroupPoint a = law.lift(S.A()), c = law.lift(S.C());
      return Translation{law, law.add(law.twice(a), law.negate(law.twice(c)))};
    } catch (const Error& e) {
      why = std::string(to_string(e.code())) + ": " + e.what();
      return std::nullopt;
    }
  }
};

}  // namespace

CommandResult cmd_generate(const RunConfig& config) {
  if (config.random == !config.abscissas.empty())
    throw Error(ErrorCode::InvalidInput, "give exactly one of --abscissas and --random");
  if (config.trapezoidal && !config.random)
    throw Error(ErrorCode::InvalidInput, "--trapezoidal requires --random");
  if (config.vertical && !config.trapezoidal) throw Error(ErrorCode::InvalidInput, "--vertical requires --trapezoidal");

  std::optional<Pattern22> S;
  if (config.random) {
    Rng rng(config.seed);
    S = config.trapezoidal ? random_trapezoidal_pattern(rng, config.vertical, config.tol)
                           : random_generic_pattern(rng, config.tol);
  } else {
    S = from_hyperbola(parse_abscissas(config.abscissas), {}, config.tol);
  }

  CommandResult result;
  result.document = to_text(pattern_to_json(*S));
  const std::string cls(to_string(classify(*S, config.tol)));
  result.summary = Json{{"class", cls}};
  result.human = "class: " + cls + "\n";
  try {
    const MiquelQuartic q = quartic_of_pattern(*S, config.tol);
    Json qj = quartic_coefficients(q);
    qj["nondegenerate"] = is_nondegenerate(q);
    result.summary["quartic"] = qj;
    result.human += "quartic: a = " + g17(q.a) + ", b = " + g17(q.b) + ", c = " + g17(q.c) +
                    (is_nondegenerate(q) ? " (nondegenerate)\n" : " (degenerate)\n");
  } catch (const Error& e) {
    result.summary["quartic"] = nullptr;
    result.summary["quartic_error"] = error_json(e);
    result.human += "quartic: unavailable (" + std::string(e.what()) + ")\n";
  }
  return result;
}

CommandResult cmd_mutate(const RunConfig& config) {
  if (config.color != "white" && config.color != "black")
    throw Error(ErrorCode::InvalidInput, "color must be white or black");
  const Color color = config.color == "white" ? Color::White : Color::Black;
  const Pattern22 S = load_pattern(config);
  const Pattern22 T = config.renormalize ? mutate_renormalized(S, color, config.tol) : mutate(S, color, config.tol);

  CommandResult result;
  result.document = to_text(pattern_to_json(T));
  result.summary = Json{{"color", config.color},
                        {"renormalized", config.renormalize},
                        {"E", point_json(T.E())},
                        {"max_face_residual", max_face_residual(T)}};
  result.human = config.color + " mutation" + (config.renormalize ? " (renormalized)" : "") + ": E -> [" +
                 g17(T.E().x) + ", " + g17(T.E().y) + "]\n";
  return result;
}

CommandResult cmd_orbit(const RunConfig& config) {
  const int steps = config.steps.value_or(10);
  if (steps <= 0) throw Error(ErrorCode::InvalidInput, "steps must be positive");
  const Pattern22 S0 = load_pattern(config);
  const MiquelQuartic q0 = quartic_of_pattern(S0, config.tol);
  const ConservedQuantities c0 = conserved_quantities(S0);
  const double scale = S0.scale();

  std::string no_prediction;
  const std::optional<Translation> shift = Translation::of(S0, q0, no_prediction);
  std::optional<GroupPoint> running;
  if (shift) running = shift->law.lift(S0.E());

  Json entries = Json::array();
  auto entry = [&](int k, const Pattern22& S, const MiquelQuartic& q, double correction,
                   std::optional<double> prediction, std::optional<double> translation) {
    entries.push_back(Json{{"step", k},
                           {"points", points_json(S)},
                           {"quartic", quartic_coefficients(q)},
                           {"conserved", conserved_json(conserved_quantities(S))},
                           {"residuals",
                            {{"face", max_face_residual(S)},
                             {"correction", correction},
                             {"prediction", optional_number(prediction)},
                             {"translation", optional_number(translation)}}}});
  };

  MutationOrbit orbit(S0, config.tol);
  entry(0, S0, q0, orbit.last_correction(), std::nullopt, std::nullopt);

  double conserved_drift = 0.0, angle_drift = 0.0, coefficient_drift_max = 0.0, frame_drift_max = 0.0;
  double prediction_max = 0.0, translation_max = 0.0, correction_max = orbit.last_correction();
  int completed = 0;
  std::optional<Error> failure;
  Point2 previous_E = S0.E();
  for (int k = 1; k <= steps; ++k) {
    try {
      orbit.apply(Color::White);
      double correction = orbit.last_correction();
      const Pattern22& S = orbit.apply(Color::Black);
      correction = std::max(correction, orbit.last_correction());
      const MiquelQuartic q = quartic_of_pattern(S, config.tol);

      std::optional<double> prediction, translation;
      if (shift) {
        const GroupLaw& law = shift->law;
        const Point2 one_step = law.to_world(law.add(law.lift(previous_E), shift->step));
        prediction = distance(one_step, S.E());
        running = law.add(*running, shift->step);
        translation = distance(law.to_world(*running), S.E());
        prediction_max = std::max(prediction_max, *prediction);
        translation_max = std::max(translation_max, *translation);
      }
      const ConservedQuantities c = conserved_quantities(S);
      conserved_drift = std::max({conserved_drift, distance(c.A, c0.A), distance(c.C, c0.C), distance(c.G, c0.G),
                                  distance(c.I, c0.I)});
      angle_drift = std::max({angle_drift, std::abs(wrap_line_angle(c.angle_CBA - c0.angle_CBA)),
                              std::abs(wrap_line_angle(c.angle_ADG - c0.angle_ADG))});
      coefficient_drift_max = std::max(coefficient_drift_max, coefficient_drift(q0, q));
      frame_drift_max = std::max(frame_drift_max, frame_drift(q0, q, scale));
      correction_max = std::max(correction_max, correction);
      entry(k, S, q, correction, prediction, translation);
      previous_E = S.E();
      completed = k;
    } catch (const Error& e) {
      entries.push_back(Json{{"step", k}, {"error", error_json(e)}});
      failure = e;
      break;
    }
  }

  Json summary{{"steps", completed},
               {"scale", scale},
               {"max_conserved_drift", conserved_drift},
               {"max_angle_drift", angle_drift},
               {"max_coefficient_drift", coefficient_drift_max},
               {"max_frame_drift", frame_drift_max},
               {"max_prediction_error", shift ? Json(prediction_max) : Json(nullptr)},
               {"max_translation_error", shift ? Json(translation_max) : Json(nullptr)},
               {"max_correction", correction_max}};
  if (!shift) summary["prediction_unavailable"] = no_prediction;

  CommandResult result;
  result.document = to_text(Json{{"format", kOrbitFormat}, {"steps", entries}, {"summary", summary}});
  result.summary = summary;
  std::ostringstream human;
  human << "orbit: " << completed << " of " << steps << " steps\n"
        << "max conserved drift: " << g17(conserved_drift) << "\n"
        << "max coefficient drift: " << g17(coefficient_drift_max) << "\n"
        << "max prediction error: " << (shift ? g17(prediction_max) : "unavailable") << "\n";
  result.human = human.str();
  if (failure) {
    result.exit_code = exit_code(failure->code());
    result.error = error_json(*failure);
    result.error["step"] = completed + 1;
  }
  return result;
}

CommandResult cmd_quartic(const RunConfig& config) {
  const Pattern22 S = load_pattern(config);
  const MiquelQuartic q = quartic_of_pattern(S, config.tol);
  Json report = quartic_coefficients(q);
  report["omega"] = point_json(q.frame.origin);
  report["axis"] = point_json(q.frame.axis);
  report["nondegenerate"] = is_nondegenerate(q);
  CommandResult result;
  result.document = to_text(report);
  return result;
}

CommandResult cmd_verify(const RunConfig& config) {
  if (config.trials <= 0) throw Error(ErrorCode::InvalidInput, "trials must be positive");
  const Pattern22 S = load_pattern(config);
  const MiquelQuartic q = quartic_of_pattern(S, config.tol);
  CommandResult result;
  if (!is_nondegenerate(q)) {
    result.exit_code = exit_code(ErrorCode::NotNondegenerate);
    result.error = error_json(Error(ErrorCode::NotNondegenerate, "the quartic of the pattern is degenerate"));
    result.error["predicates"] = Json{{"a", q.a},
                                      {"b", q.b},
                                      {"four_c", 4.0 * q.c},
                                      {"a_minus_b", q.a - q.b},
                                      {"four_c_minus_a_squared", 4.0 * q.c - q.a * q.a},
                                      {"four_c_minus_b_squared", 4.0 * q.c - q.b * q.b}};
    return result;
  }

  const GroupLaw law(q);
  const double scale = S.scale();
  const double extent = law.extent();

  const Point2 direct_w = mutate_renormalized(S, Color::White, config.tol).E();
  const Point2 direct_b = mutate_renormalized(S, Color::Black, config.tol).E();
  const Point2 predicted_w = predict_mutation(S, Color::White, config.tol);
  const Point2 predicted_b = predict_mutation(S, Color::Black, config.tol);
  const Point2 tangent_w = tangent_circle_mutation(S, config.tol).image;
  const double prediction_w = distance(direct_w, predicted_w);
  const double prediction_b = distance(direct_b, predicted_b);
  const double tangent = std::max(distance(tangent_w, direct_w), distance(tangent_w, predicted_w));

  Rng rng(config.seed);
  double commutativity = 0.0, associativity = 0.0, identity = 0.0, inverse = 0.0, torsion = 0.0;
  const GroupPoint N = law.neutral();
  for (int t = 0; t < config.trials; ++t) {
    const GroupPoint P = random_curve_point(law, rng);
    const GroupPoint Q = random_curve_point(law, rng);
    const GroupPoint R = random_curve_point(law, rng);
    commutativity = std::max(commutativity, law.distance(law.add(P, Q), law.add(Q, P)));
    associativity = std::max(associativity, law.distance(law.add(law.add(P, Q), R), law.add(P, law.add(Q, R))));
    identity = std::max(identity, law.distance(law.add(P, N), P));
    inverse = std::max(inverse, law.distance(law.add(P, law.negate(P)), N));
  }
  for (Point2 T : x_axis_points(q)) torsion = std::max(torsion, law.distance(law.twice({T.x, T.y}), N));

  double spread = 0.0;
  int skipped = 0;
  for (int b = 0; b < kBasePoints; ++b) {
    const SumInvarianceReport r =
        base_point_sum_invariance(law, random_curve_point(law, rng), kCirclesPerBasePoint, rng);
    spread = std::max(spread, r.spread);
    skipped += r.skipped;
  }

  struct Check {
    const char* name;
    double value, bound;
  };
  const Check checks[] = {{"theorem3_residual_white", prediction_w, 1e-7 * scale},
                          {"theorem3_residual_black", prediction_b, 1e-7 * scale},
                          {"prop5_residual", tangent, 1e-7 * scale},
                          {"commutativity", commutativity, 1e-9 * extent},
                          {"associativity", associativity, 1e-6 * extent},
                          {"identity", identity, 1e-9 * extent},
                          {"inverse", inverse, 1e-9 * extent},
                          {"two_torsion", torsion, 1e-9 * extent},
                          {"sum_invariance", spread, 1e-6 * extent}};
  Json failed = Json::array();
  for (const Check& c : checks)
    if (!(c.value <= c.bound)) failed.push_back(c.name);

  Json report{{"theorem3_residual_white", prediction_w},
              {"theorem3_residual_black", prediction_b},
              {"prop5_residual", tangent},
              {"group_axiom_residuals",
               {{"commutativity", commutativity},
                {"associativity", associativity},
                {"identity", identity},
                {"inverse", inverse},
                {"two_torsion", torsion},
                {"sum_invariance", spread}}},
              {"skipped_trials", skipped},
              {"scale", scale},
              {"curve_extent", extent},
              {"passed", failed.empty()}};
  result.document = to_text(report);
  if (!failed.empty()) {
    result.exit_code = 4;
    result.error = Json{{"error", "ResidualAboveThreshold"}, {"failed", failed}, {"exit_code", 4}};
  }
  return result;
}

CommandResult cmd_measure(const RunConfig& config) {
  const Pattern22 S = load_pattern(config);
  const auto report = orbit_measure_report(S, config.steps.value_or(20), config.reversed, config.tol);
  Json list = Json::array();
  for (const StepMeasure& m : report)
    list.push_back(Json{{"from_step", m.from_step}, {"to_step", m.to_step}, {"branch", m.branch}, {"measure", m.measure}});
  CommandResult result;
  result.document = to_text(list);
  return result;
}

CommandResult cmd_render(const RunConfig& config) {
  const Json doc = load_document(config);
  if (!doc.is_object() || !doc.contains("format"))
    throw Error(ErrorCode::InvalidInput, "input is neither a pattern nor an orbit file");

  std::optional<Pattern22> S;
  std::vector<Point2> trail;
  if (doc.at("format") == kOrbitFormat) {
    if (!doc.contains("steps") || !doc.at("steps").is_array() || doc.at("steps").empty())
      throw Error(ErrorCode::InvalidInput, "orbit file without steps");
    for (const Json& step : doc.at("steps")) {
      if (!step.contains("points")) continue;  // a recorded failure
      const Pattern22 P = points_from_json(step.at("points"), config.tol);
      if (!S) S = P;
      trail.push_back(P.E());
    }
    if (!S) throw Error(ErrorCode::InvalidInput, "orbit file has no valid step");
  } else {
    S = pattern_from_json(doc, config.tol);
    const int steps = config.steps.value_or(0);
    if (steps < 0) throw Error(ErrorCode::InvalidInput, "steps must be nonnegative");
    if (steps > 0) {
      MutationOrbit orbit(*S, config.tol);
      trail.push_back(S->E());
      for (int k = 0; k < steps; ++k) {
        orbit.apply(Color::White);
        trail.push_back(orbit.apply(Color::Black).E());
      }
    }
  }
  CommandResult result;
  result.document = render_svg(*S, trail, config.render, config.tol);
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Miquel dynamics on (2,2)-biperiodic circle patterns", "miquel"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol_flag = 0.0;
  int steps_flag = 0;
  app.add_option("-i,--input", config.input, "input pattern or orbit file");
  app.add_option("-o,--output", config.output, "output file (standard output when absent)");
  app.add_option("--seed", config.seed, "random seed");
  CLI::Option* tol_opt = app.add_option("--tol", tol_flag, "tolerance (overrides MIQUEL_TOL)");
  CLI::Option* steps_opt = app.add_option("--steps", steps_flag, "orbit length");
  app.add_flag("--json", config.json, "machine-readable standard output");

  auto* generate = app.add_subcommand("generate", "build a pattern from five abscissas on xy = 1");
  generate->add_option("--abscissas", config.abscissas, "b,d,e,f,h");
  generate->add_flag("--random", config.random, "random pattern from --seed");
  generate->add_flag("--trapezoidal", config.trapezoidal, "random trapezoidal pattern");
  generate->add_flag("--vertical", config.vertical, "vertical trapezoidal class");

  auto* mutate_cmd = app.add_subcommand("mutate", "apply one mutation");
  mutate_cmd->add_option("--color", config.color, "white or black");
  mutate_cmd->add_flag("--renormalize", config.renormalize, "translate A back to its place");

  auto* orbit = app.add_subcommand("orbit", "iterate the black-after-white renormalized mutation");
  auto* quartic = app.add_subcommand("quartic", "invariant quartic of a pattern");
  auto* verify = app.add_subcommand("verify", "cross-check the dynamics against the group law");
  verify->add_option("--trials", config.trials, "random triples for the group axioms");
  auto* measure = app.add_subcommand("measure", "invariant-measure step lengths along an orbit");
  measure->add_flag("--reversed", config.reversed, "white after black");

  auto* render = app.add_subcommand("render", "SVG drawing of a pattern or orbit");
  std::string layers;
  render->add_option("--width", config.render.width, "canvas width in pixels");
  render->add_option("--stroke", config.render.stroke, "base stroke width");
  render->add_option("--layers", layers, "comma-separated subset of the layers");
  render->add_option("--samples", config.render.samples_per_branch, "quartic samples per branch");

  auto fail = [&](const Json& error) {
    err << to_text(error);
    return error.at("exit_code").get<int>();
  };

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(Json{{"error", "InvalidInput"}, {"message", e.what()}, {"exit_code", 2}});
  }

  try {
    if (const char* env = std::getenv("MIQUEL_TOL"); env != nullptr && *env != '\0')
      config.tol = parse_number(env, "MIQUEL_TOL");
    if (tol_opt->count() > 0) config.tol = tol_flag;
    if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
    if (steps_opt->count() > 0) config.steps = steps_flag;
    if (render->parsed() && !layers.empty()) {
      config.render.layers.clear();
      std::stringstream in(layers);
      std::string item;
      while (std::getline(in, item, ',')) config.render.layers.insert(item);
    }

    CommandResult result;
    if (generate->parsed()) result = cmd_generate(config);
    else if (mutate_cmd->parsed()) result = cmd_mutate(config);
    else if (orbit->parsed()) result = cmd_orbit(config);
    else if (quartic->parsed()) result = cmd_quartic(config);
    else if (verify->parsed()) result = cmd_verify(config);
    else if (measure->parsed()) result = cmd_measure(config);
    else result = cmd_render(config);

    if (config.output.empty()) {
      out << result.document;
    } else {
      write_file(config.output, result.document);
      if (config.json && !result.summary.is_null()) out << to_text(result.summary);
      else if (!config.json) out << result.human;
    }
    if (!result.error.is_null()) err << to_text(result.error);
    return result.exit_code;
  } catch (const Error& e) {
    return fail(error_json(e));
  } catch (const std::exception& e) {
    return fail(Json{{"error", "InternalError"}, {"message", e.what()}, {"exit_code", 4}});
  }
}

}  // namespace miquel::cli
