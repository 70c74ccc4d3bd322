// Command-line front end. Everything goes through the C API of the shared
// library; this translation unit never touches the C++ core directly.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdetach.h"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
}

struct Owned {
  char* text = nullptr;
  ~Owned() { hyperdetach_string_free(text); }
  std::string str() const { return text ? std::string(text) : std::string(); }
};

int finish(hyperdetach_status status, const Owned& response,
           const std::string& output_path, const Owned& error) {
  if (status == HYPERDETACH_OK ||
      status == HYPERDETACH_ERROR_VERIFICATION) {
    if (response.text) write_output(output_path, response.str());
  }
  if (error.text) std::cerr << error.str();
  return static_cast<int>(status);
}

json design_json(long long n, const std::vector<long long>& sizes,
                 const std::vector<long long>& lambdas,
                 const std::optional<long long>& p,
                 const std::vector<long long>& parts) {
  json design;
  design["n"] = n;
  design["H"] = sizes;
  design["lambda"] = lambdas;
  if (!parts.empty()) {
    design["parts"] = parts;
  } else if (p) {
    design["parts"] = std::vector<long long>(static_cast<std::size_t>(n), *p);
  }
  return design;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair hypergraph detachment and design factorization"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "Build a complete multi-uniform (or multipartite) design");
  long long gen_n = 0;
  std::vector<long long> gen_sizes, gen_lambdas, gen_parts;
  std::optional<long long> gen_p;
  std::string gen_out;
  generate->add_option("--n", gen_n, "number of vertices (or parts)")
      ->required();
  generate->add_option("--H", gen_sizes, "edge sizes")
      ->required()
      ->delimiter(',');
  generate->add_option("--lambda", gen_lambdas, "edge multiplicities")
      ->required()
      ->delimiter(',');
  generate->add_option("--p", gen_p, "uniform part size (partite)");
  generate->add_option("--parts", gen_parts, "explicit part sizes")
      ->delimiter(',');
  generate->add_option("-o,--output", gen_out, "output path (default stdout)");

  // detach
  auto* detach = app.add_subcommand(
      "detach", "Split vertices fairly according to a count map");
  std::string detach_input, detach_counts, detach_out, detach_audit_out;
  std::uint64_t detach_seed = 0;
  bool detach_audit = false;
  detach->add_option("--input", detach_input, "hypergraph JSON (\"-\" stdin)")
      ->required();
  detach->add_option("--g", detach_counts, "split count JSON ([[vertex,count]...])")
      ->required();
  detach->add_option("--seed", detach_seed, "vertex-order fuzzing seed");
  detach->add_flag("--audit", detach_audit,
                   "emit per-step audit records as JSON lines");
  detach->add_option("--audit-out", detach_audit_out,
                     "audit stream path (default stderr)");
  detach->add_option("-o,--output", detach_out, "output path");

  // factorize
  auto* factorize = app.add_subcommand(
      "factorize", "Factorize a complete design into (almost) regular factors");
  long long fac_n = 0;
  std::vector<long long> fac_sizes, fac_lambdas, fac_parts, fac_r, fac_q;
  std::optional<long long> fac_p;
  bool fac_almost = false;
  std::uint64_t fac_seed = 0;
  std::string fac_out;
  factorize->add_option("--n", fac_n, "number of vertices (or parts)")
      ->required();
  factorize->add_option("--H", fac_sizes, "edge sizes")
      ->required()
      ->delimiter(',');
  factorize->add_option("--lambda", fac_lambdas, "edge multiplicities")
      ->required()
      ->delimiter(',');
  factorize->add_option("--p", fac_p, "uniform part size (partite)");
  factorize->add_option("--parts", fac_parts, "explicit part sizes")
      ->delimiter(',');
  factorize->add_option("--R", fac_r, "per-factor degrees")
      ->required()
      ->delimiter(',');
  auto* q_option =
      factorize->add_option("--Q", fac_q, "per-factor lower degrees")
          ->delimiter(',');
  factorize->add_flag("--almost", fac_almost, "almost regular factors")
      ->excludes(q_option);
  factorize->add_option("--seed", fac_seed, "vertex-order fuzzing seed");
  factorize->add_option("-o,--output", fac_out, "output path");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Verify a design, detachment, or factorization artifact");
  std::string verify_input, verify_out;
  verify->add_option("artifact", verify_input, "artifact JSON (\"-\" stdin)")
      ->required();
  verify->add_option("-o,--output", verify_out, "report path (default stdout)");

  // split
  auto* split = app.add_subcommand(
      "split", "Fair split of a ground set against two laminar families");
  std::string split_input, split_out;
  split->add_option("input", split_input,
                    "JSON {ground, familyA, familyB, n} (\"-\" stdin)")
      ->required();
  split->add_option("-o,--output", split_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*generate) {
      json request;
      request["design"] =
          design_json(gen_n, gen_sizes, gen_lambdas, gen_p, gen_parts);
      Owned response, error;
      hyperdetach_status status = hyperdetach_generate(
          request.dump().c_str(), &response.text, &error.text);
      return finish(status, response, gen_out, error);
    }

    if (*detach) {
      if (!detach_audit && std::getenv("HYPERDETACH_AUDIT") &&
          std::string(std::getenv("HYPERDETACH_AUDIT")) == "1") {
        detach_audit = true;
      }
      json request;
      request["hypergraph"] = json::parse(read_input(detach_input));
      request["g"] = json::parse(read_input(detach_counts));
      request["seed"] = detach_seed;
      request["audit"] = detach_audit;
      Owned response, audit, error;
      hyperdetach_status status =
          hyperdetach_detach(request.dump().c_str(), &response.text,
                             &audit.text, &error.text);
      if (audit.text) {
        if (detach_audit_out.empty()) {
          std::cerr << audit.str();
        } else {
          write_output(detach_audit_out, audit.str());
        }
      }
      return finish(status, response, detach_out, error);
    }

    if (*factorize) {
      json request;
      request["design"] =
          design_json(fac_n, fac_sizes, fac_lambdas, fac_p, fac_parts);
      json factors;
      factors["R"] = fac_r;
      if (!fac_q.empty()) factors["Q"] = fac_q;
      request["factors"] = std::move(factors);
      request["kind"] =
          fac_almost ? "almostR" : (!fac_q.empty() ? "QR" : "R");
      request["seed"] = fac_seed;
      Owned response, error;
      hyperdetach_status status = hyperdetach_factorize(
          request.dump().c_str(), &response.text, &error.text);
      return finish(status, response, fac_out, error);
    }

    if (*verify) {
      Owned report, error;
      hyperdetach_status status = hyperdetach_verify(
          read_input(verify_input).c_str(), &report.text, &error.text);
      return finish(status, report, verify_out, error);
    }

    if (*split) {
      Owned response, error;
      hyperdetach_status status = hyperdetach_split(
          read_input(split_input).c_str(), &response.text, &error.text);
      return finish(status, response, split_out, error);
    }
  } catch (const json::parse_error& err) {
    std::cerr << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << err.what() << "\n";
    return 3;
  }
  return 3;
}
