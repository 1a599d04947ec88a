// SPDX-License-Identifier: MIT
// Command-line front door.  All mathematics lives behind the shared-library C
// API; this file only parses arguments, forwards them, and maps status codes
// to exit codes (0 ok, 2 failed verification, 1 anything else).
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "invforge.h"

namespace {

// Print the result (success) or the session's error message (failure) and
// translate the C-API status into the documented exit code.
int finish(if_session* s, int status, char* out) {
  if (status == IF_OK) {
    if (out != nullptr) {
      std::fputs(out, stdout);
      if_string_free(out);
    }
    return 0;
  }
  std::fprintf(stderr, "error: %s\n", if_session_error(s));
  return status == IF_IDENTITY ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "invforge: generators, relations and Hilbert series of rings of "
      "invariants of orthogonal and symplectic groups over F2"};
  app.require_subcommand(1);

  // compute ------------------------------------------------------------
  std::string what, sign, group = "o-odd";
  int n = 1, index = -1;
  bool as_json = false, allow_slow = false;
  CLI::App* compute = app.add_subcommand(
      "compute", "Print one named family of classes in canonical form");
  compute->add_option("what", what,
                      "xi|dickson|lambda|lambda-i|omega|omega-pm|chern|eta|"
                      "ke|jf|relations")
      ->required();
  compute->add_option("--n", n, "level (half the rank of the even subspace)")
      ->required();
  compute->add_option("--sign", sign, "restrict to the + or - member");
  compute->add_option("--i", index, "index for lambda-i");
  compute->add_option("--group", group, "sp|o-odd|o-plus|o-minus");
  compute->add_flag("--json", as_json, "wrap the output in a JSON object");
  compute->add_flag("--allow-slow", allow_slow, "permit slow high-level runs");

  // verify -------------------------------------------------------------
  std::string id_name;
  bool verify_all = false, verify_list = false;
  CLI::App* verify = app.add_subcommand("verify", "Check stored identities");
  verify->require_subcommand(1);
  CLI::App* identity =
      verify->add_subcommand("identity", "Verify one identity or the catalogue");
  identity->add_option("--name", id_name, "identity name (see --list)");
  identity->add_option("--n", n, "level to check at");
  identity->add_flag("--all", verify_all,
                     "run the whole catalogue at every admissible level");
  identity->add_flag("--list", verify_list, "list identity names and exit");
  identity->add_flag("--allow-slow", allow_slow,
                     "include the level-3 checks that take seconds");

  // enumerate ----------------------------------------------------------
  bool with_transvections = false;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "Exhaustively enumerate a group");
  enumerate->require_subcommand(1);
  CLI::App* group_cmd = enumerate->add_subcommand(
      "group", "List the order (and optionally transvection count)");
  group_cmd->add_option("--group", group, "sp|o-odd|o-plus|o-minus")
      ->required();
  group_cmd->add_option("--n", n, "level")->required();
  group_cmd->add_flag("--transvections", with_transvections,
                      "also count transvections");
  group_cmd->add_flag("--json", as_json, "emit a JSON object");

  // hilbert ------------------------------------------------------------
  int expand = -1;
  CLI::App* hilbert = app.add_subcommand(
      "hilbert", "Hilbert series of the invariant ring (JSON report)");
  hilbert->add_option("--group", group, "sp|o-odd|o-plus|o-minus")->required();
  hilbert->add_option("--n", n, "level")->required();
  hilbert->add_option("--expand", expand,
                      "also list coefficients up to this degree");

  // goldens ------------------------------------------------------------
  std::string mode, dir;
  CLI::App* goldens = app.add_subcommand(
      "goldens", "Check or regenerate the golden output tree");
  goldens->add_option("mode", mode, "check|regenerate")->required();
  goldens->add_option("--dir", dir, "golden tree root (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;
  }

  if_session* s = if_session_new();
  if (s == nullptr) {
    std::fprintf(stderr, "error: out of memory\n");
    return 1;
  }
  if (allow_slow) if_set_allow_slow(s, 1);
  if (const char* env = std::getenv("INVFORGE_THREADS")) {
    int threads = std::atoi(env);
    if (if_set_threads(s, threads > 0 ? threads : 0) != IF_OK) {
      std::fprintf(stderr, "error: INVFORGE_THREADS=%s: %s\n", env,
                   if_session_error(s));
      if_session_free(s);
      return 1;
    }
  }

  char* out = nullptr;
  int status = IF_INTERNAL;
  if (compute->parsed()) {
    status = if_compute(s, what.c_str(), n, sign.empty() ? nullptr : sign.c_str(),
                        index, group.c_str(), as_json ? 1 : 0, &out);
  } else if (verify->parsed()) {
    if (verify_list) {
      status = if_identity_names(s, &out);
    } else if (verify_all) {
      status = if_verify_all(s, &out);
    } else if (!id_name.empty()) {
      status = if_verify_identity(s, id_name.c_str(), n, &out);
    } else {
      std::fprintf(stderr,
                   "error: verify identity needs --name NAME --n N, --all, "
                   "or --list\n");
      if_session_free(s);
      return 1;
    }
  } else if (enumerate->parsed()) {
    status = if_enumerate_group(s, group.c_str(), n,
                                with_transvections ? 1 : 0, as_json ? 1 : 0,
                                &out);
  } else if (hilbert->parsed()) {
    status = if_hilbert(s, group.c_str(), n, expand, &out);
  } else if (goldens->parsed()) {
    const char* d = dir.empty() ? nullptr : dir.c_str();
    if (mode == "check") {
      status = if_golden_check(s, d, &out);
    } else if (mode == "regenerate") {
      status = if_golden_regenerate(s, d, &out);
    } else {
      std::fprintf(stderr, "error: goldens mode must be check or regenerate\n");
      if_session_free(s);
      return 1;
    }
  }

  int rc = finish(s, status, out);
  if_session_free(s);
  return rc;
}
