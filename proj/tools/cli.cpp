#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xpl/ctl.hpp"
#include "xpl/errors.hpp"
#include "xpl/logic.hpp"
#include "xpl/metrics.hpp"
#include "xpl/network.hpp"
#include "xpl/xpath.hpp"

namespace xpl::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised inside execute() to leave with a specific exit code.
struct Exit {
  int code;
};

std::string read_file(const std::string& path, const char* what, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << what << " '" << path << "'\n";
    throw Exit{exit_code::input};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report_syntax(const std::string& what, const std::string& text, const SyntaxError& e,
                   std::ostream& err) {
  err << "error: " << what << " syntax: " << e.what() << "\n";
  if (text.find('\n') == std::string::npos) {
    err << "  " << text << "\n  " << std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') << "^\n";
  }
}

net::Network load_network(const RunConfig& config, std::ostream& err) {
  if (config.network_path.empty()) {
    err << "error: --network is required\n";
    throw Exit{exit_code::syntax};
  }
  std::string text = read_file(config.network_path, "network file", err);
  try {
    return net::parse_network(text);
  } catch (const SyntaxError& e) {
    err << "error: network file '" << config.network_path << "': " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "error: network file '" << config.network_path << "': " << e.what() << "\n";
  }
  throw Exit{exit_code::input};
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos) s += ".0";
  return s;
}

std::string operator_name(Op op) {
  switch (op) {
    case Op::truth: return "true";
    case Op::falsity: return "false";
    case Op::atom: return "atom";
    case Op::negation: return "!";
    case Op::conjunction: return "&";
    case Op::disjunction: return "|";
    default: return std::string(quantifier_keyword(op));
  }
}

void write_keys(const std::vector<std::string>& keys, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << json(keys).dump() << "\n";
  } else {
    for (const std::string& k : keys) out << k << "\n";
  }
}

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.formula.empty() && !config.formula_file.empty()) {
    err << "error: give either --formula or --formula-file, not both\n";
    return exit_code::syntax;
  }
  std::string text = config.formula;
  if (!config.formula_file.empty()) text = read_file(config.formula_file, "formula file", err);
  if (text.empty()) {
    err << "error: check needs a nonempty --formula or --formula-file\n";
    return exit_code::syntax;
  }

  logic::XplFormula formula = logic::XplFormula::truth();
  try {
    formula = logic::parse_xpl(text);
  } catch (const SyntaxError& e) {
    report_syntax("formula", text, e, err);
    return exit_code::syntax;
  }

  net::Network network = load_network(config, err);
  std::optional<net::NodeId> witness_node;
  if (config.witness_for) {
    witness_node = network.find(*config.witness_for);
    if (!witness_node) {
      err << "error: --witness-for: unknown node key '" << *config.witness_for << "'\n";
      return exit_code::input;
    }
  }

  logic::Labelling labelling = logic::label_step(network, formula, config.parallel);
  ctl::CtlFormula pure = logic::replace_step(formula, labelling.registry);
  ctl::SatSet sat = ctl::model_check(network, labelling.labels, pure);
  std::vector<std::string> keys = sat.keys(network);

  if (!witness_node) {
    write_keys(keys, config.format, out);
    return exit_code::ok;
  }

  json witness_json;
  std::string witness_line;
  const std::string& key = network.key(*witness_node);
  witness_json["node"] = key;
  if (!ctl::is_witnessable(pure.op())) {
    std::string op = operator_name(pure.op());
    witness_json["kind"] = "none-available";
    witness_json["reason"] = "top-level operator " + op + " has no path witness";
    witness_line = "witness " + key + ": unavailable (top-level operator " + op + " has no path witness)";
  } else {
    try {
      ctl::Witness w = ctl::witness(network, labelling.labels, pure, *witness_node);
      std::vector<std::string> path;
      for (net::NodeId id : w.path) path.push_back(network.key(id));
      witness_json["kind"] = w.kind == ctl::Witness::Kind::node ? "node" : "path";
      witness_json["inverse"] = w.inverse;
      witness_json["path"] = path;
      witness_line = "witness " + key + (w.inverse ? " (inverse):" : ":");
      for (std::size_t i = 0; i < path.size(); ++i) witness_line += (i ? " -> " : " ") + path[i];
    } catch (const NotSatisfied&) {
      witness_json["kind"] = "not-satisfied";
      witness_line = "witness " + key + ": none (node does not satisfy the formula)";
    }
  }

  if (config.format == OutputFormat::json) {
    json doc;
    doc["satisfying"] = keys;
    doc["witness"] = witness_json;
    out << doc.dump() << "\n";
  } else {
    write_keys(keys, config.format, out);
    out << witness_line << "\n";
  }
  return exit_code::ok;
}

int run_query(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.filter.empty()) {
    err << "error: query needs a nonempty --filter\n";
    return exit_code::syntax;
  }
  xpath::FilterPtr filter;
  try {
    filter = xpath::parse_filter(config.filter);
  } catch (const SyntaxError& e) {
    report_syntax("filter", config.filter, e, err);
    return exit_code::syntax;
  }
  net::Network network = load_network(config, err);
  write_keys(logic::query(network, *filter, config.parallel).keys(network), config.format, out);
  return exit_code::ok;
}

std::string histogram_text(const metrics::Histogram& h) {
  std::string out;
  for (const auto& [degree, count] : h) {
    if (!out.empty()) out += ' ';
    out += std::to_string(degree) + ":" + std::to_string(count);
  }
  return out;
}

json histogram_json(const metrics::Histogram& h) {
  json out = json::object();
  for (const auto& [degree, count] : h) out[std::to_string(degree)] = count;
  return out;
}

int run_metrics(const RunConfig& config, std::ostream& out, std::ostream& err) {
  net::Network network = load_network(config, err);

  metrics::Clustering clustering = metrics::clustering(network);
  auto comps = metrics::components(network);
  metrics::DegreeHistogram hist = metrics::degree_histogram(network);

  std::optional<metrics::Geodesics> geo;
  if (network.node_count() > 0) geo = metrics::geodesics(network);

  std::optional<bool> eulerian;
  std::string eulerian_note;
  try {
    eulerian = metrics::eulerian_path_exists(network);
  } catch (const FormatError& e) {
    eulerian_note = e.what();
  }

  std::string mean_exact;
  if (geo) {
    std::uint64_t g = std::gcd(geo->distance_sum, geo->pair_count);
    if (g == 0) {
      mean_exact = "0";
    } else {
      mean_exact = std::to_string(geo->distance_sum / g);
      if (geo->pair_count != g) mean_exact += "/" + std::to_string(geo->pair_count / g);
    }
  }

  if (config.format == OutputFormat::json) {
    json doc;
    doc["nodes"] = network.node_count();
    doc["edges"] = network.edge_count();
    doc["directed"] = network.directed();
    doc["triangles"] = clustering.triangles;
    doc["connected_triples"] = clustering.connected_triples;
    doc["clustering_coefficient"] = clustering.value();
    doc["components"] = comps.size();
    doc["giant_component_size"] = comps.empty() ? 0 : comps.front().size();
    doc["diameter"] = geo ? json(geo->diameter) : json(nullptr);
    doc["mean_geodesic"] = geo ? json(geo->mean()) : json(nullptr);
    doc["mean_geodesic_exact"] = geo ? json(mean_exact) : json(nullptr);
    if (hist.directed) {
      doc["in_degree_histogram"] = histogram_json(hist.in);
      doc["out_degree_histogram"] = histogram_json(hist.out);
    } else {
      doc["degree_histogram"] = histogram_json(hist.degree);
    }
    doc["eulerian_path"] = eulerian ? json(*eulerian) : json(nullptr);
    out << doc.dump(2) << "\n";
    return exit_code::ok;
  }

  out << "nodes " << network.node_count() << "\n";
  out << "edges " << network.edge_count() << "\n";
  out << "directed " << (network.directed() ? "true" : "false") << "\n";
  out << "triangles " << clustering.triangles << "\n";
  out << "connected_triples " << clustering.connected_triples << "\n";
  out << "clustering_coefficient " << format_double(clustering.value()) << "\n";
  out << "components " << comps.size() << "\n";
  out << "giant_component_size " << (comps.empty() ? 0 : comps.front().size()) << "\n";
  if (geo) {
    out << "diameter " << geo->diameter << "\n";
    out << "mean_geodesic " << format_double(geo->mean()) << "\n";
    out << "mean_geodesic_exact " << mean_exact << "\n";
  } else {
    out << "diameter n/a\nmean_geodesic n/a\nmean_geodesic_exact n/a\n";
  }
  if (hist.directed) {
    out << "in_degree_histogram " << histogram_text(hist.in) << "\n";
    out << "out_degree_histogram " << histogram_text(hist.out) << "\n";
  } else {
    out << "degree_histogram " << histogram_text(hist.degree) << "\n";
  }
  if (eulerian) {
    out << "eulerian_path " << (*eulerian ? "true" : "false") << "\n";
  } else {
    out << "eulerian_path n/a (" << eulerian_note << ")\n";
  }
  return exit_code::ok;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  // Buffer so that nothing reaches `out` on a failing run.
  std::ostringstream buffer;
  int code = exit_code::ok;
  try {
    switch (config.subcommand) {
      case Subcommand::check: code = run_check(config, buffer, err); break;
      case Subcommand::query: code = run_query(config, buffer, err); break;
      case Subcommand::metrics: code = run_metrics(config, buffer, err); break;
    }
  } catch (const Exit& e) {
    code = e.code;
  } catch (const TypeError& e) {
    err << "error: evaluation: " << e.what() << "\n";
    code = exit_code::evaluation;
  }
  if (code == exit_code::ok) out << buffer.str();
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checking of XPL formulas and network statistics", "xplcheck"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "lines";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--network", config.network_path, "Network XML file");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"lines", "json"}));
  };

  CLI::App* check = app.add_subcommand("check", "Nodes satisfying an XPL formula");
  add_common(check);
  check->add_option("--formula", config.formula, "XPL formula text");
  check->add_option("--formula-file", config.formula_file, "File holding the XPL formula");
  check->add_option("--witness-for", config.witness_for, "Print a witness path for this node key");
  check->add_option("--parallel", config.parallel, "Threads for the labelling step")
      ->check(CLI::Range(1u, 256u));

  CLI::App* query = app.add_subcommand("query", "Nodes whose payload satisfies an XPath filter");
  add_common(query);
  query->add_option("--filter", config.filter, "XPath filter");
  query->add_option("--parallel", config.parallel, "Threads for filter evaluation")
      ->check(CLI::Range(1u, 256u));

  CLI::App* metrics = app.add_subcommand("metrics", "Network statistics report");
  add_common(metrics);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return exit_code::syntax;
  }

  if (check->parsed()) {
    config.subcommand = Subcommand::check;
  } else if (query->parsed()) {
    config.subcommand = Subcommand::query;
  } else {
    config.subcommand = Subcommand::metrics;
  }
  config.format = format == "json" ? OutputFormat::json : OutputFormat::lines;
  return execute(config, out, err);
}

}  // namespace xpl::cli
