// SPDX-License-Identifier: MIT
// C boundary: exceptions from the core are caught here and mapped to status
// codes; all results cross as malloc'd strings.
#include "invforge.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "goldens.hpp"
#include "groups.hpp"
#include "hilbert.hpp"
#include "identities.hpp"
#include "invariants.hpp"
#include "json.hpp"
#include "relations.hpp"

using namespace invforge;

struct if_session {
  std::string error;
  bool allow_slow = false;
  int threads = 1;
};

namespace {

int map_code(Errc c) {
  switch (c) {
    case Errc::IdentityFailed:
    case Errc::ResidueNonzero:
    case Errc::DeterminantMismatch:
    case Errc::FactorizationMismatch:
    case Errc::GoldenMismatch:
      return IF_IDENTITY;
    case Errc::Unsupported:
    case Errc::DimensionTooLarge:
    case Errc::DegreeTooLarge:
    case Errc::SizeLimitExceeded:
      return IF_UNSUPPORTED;
    case Errc::SyntaxError:
    case Errc::UnknownVariable:
    case Errc::UnknownIdentity:
    case Errc::DegenerateInput:
    case Errc::WrongParity:
      return IF_USAGE;
    default:
      return IF_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Run `body` (returning the output string); on success store it in *out.
template <typename F>
int guarded(if_session* s, char** out, F&& body) {
  if (s == nullptr) return IF_USAGE;
  s->error.clear();
  if (out == nullptr) {
    s->error = "missing output parameter";
    return IF_USAGE;
  }
  try {
    std::string text = body();
    char* p = dup_string(text);
    if (!p) {
      s->error = "out of memory";
      return IF_INTERNAL;
    }
    *out = p;
    return IF_OK;
  } catch (const Error& e) {
    s->error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    s->error = e.what();
    return IF_INTERNAL;
  }
}

GroupKind parse_group(const char* group) {
  std::string g = group ? group : "o-odd";
  if (g == "o-odd") return GroupKind::OOdd;
  if (g == "o-plus") return GroupKind::OPlus;
  if (g == "o-minus") return GroupKind::OMinus;
  if (g == "sp") return GroupKind::Sp;
  fail(Errc::DegenerateInput,
       "unknown group '" + g + "' (expected o-odd, o-plus, o-minus or sp)");
}

enum class Sign { Plus, Minus, Both };

Sign parse_sign(const char* sign) {
  if (sign == nullptr || *sign == '\0') return Sign::Both;
  std::string v = sign;
  if (v == "+") return Sign::Plus;
  if (v == "-") return Sign::Minus;
  fail(Errc::DegenerateInput, "sign must be '+' or '-'");
}

void render_matrix(std::ostringstream& out, const char* label,
                   const PolyMatrix& m) {
  out << label << " " << m.rows() << "x" << m.cols() << "\n";
  for (size_t i = 0; i < m.rows(); ++i) {
    out << "row" << i << ":";
    for (size_t j = 0; j < m.cols(); ++j) out << " [" << m.at(i, j).str() << "]";
    out << "\n";
  }
}

void render_vector(std::ostringstream& out, const char* label,
                   const std::vector<Polynomial>& v) {
  out << label << ":";
  for (const auto& p : v) out << " [" << p.str() << "]";
  out << "\n";
}

std::string compute_text(if_session* s, const std::string& what, int n,
                         Sign sign, int i, GroupKind gk) {
  std::ostringstream out;
  if (what == "xi") {
    SContext ctx = group_space(n, gk);
    auto xs = xi_sequence(ctx);
    for (size_t k = 0; k < xs.size(); ++k)
      out << "xi" << k << " = " << xs[k].str() << "\n";
  } else if (what == "dickson") {
    SContext ctx = group_space(n, gk);
    Dickson dk = dickson(ctx);
    for (size_t k = 0; k < dk.c.size(); ++k)
      out << "c" << k << " = " << dk.c[k].str() << "\n";
  } else if (what == "lambda") {
    XiContext a = XiContext::make(n);
    out << lambda_level(a, n).str() << "\n";
  } else if (what == "lambda-i") {
    XiContext a = XiContext::make(n);
    if (i < 0 || i > 2 * n)
      fail(Errc::DegenerateInput,
           "lambda-i needs --i between 0 and " + std::to_string(2 * n));
    out << lambda_i_level(a, n, i).str() << "\n";
  } else if (what == "omega") {
    if (n > 3) fail(Errc::DimensionTooLarge, "full products stop at level 3");
    XiContext a = XiContext::make(n);
    out << omega_level(a, n).str() << "\n";
  } else if (what == "omega-pm") {
    if (n > 3) fail(Errc::DimensionTooLarge, "half products stop at level 3");
    XiContext a = XiContext::make(n);
    OmegaPm o = omega_pm(a);
    if (sign != Sign::Minus) out << "omega+ = " << o.plus[n].str() << "\n";
    if (sign != Sign::Plus) out << "omega- = " << o.minus[n].str() << "\n";
  } else if (what == "chern") {
    ConcreteImages ci = concrete_images(n, SpaceKind::Odd);
    if (sign != Sign::Minus) {
      out << "P+ = " << abstract_P(ci, true).str() << "\n";
      out << "Q+ = " << abstract_Q(ci, true).str() << "\n";
    }
    if (sign != Sign::Plus) {
      out << "P- = " << abstract_P(ci, false).str() << "\n";
      out << "Q- = " << abstract_Q(ci, false).str() << "\n";
    }
  } else if (what == "eta") {
    SContext ctx = group_space(n, gk);
    out << eta(ctx).str() << "\n";
  } else if (what == "ke") {
    XiContext a = XiContext::make(n);
    KE ke = ke_matrices(a);
    render_matrix(out, "L", ke.L);
    render_matrix(out, "R", ke.R);
    render_matrix(out, "K", ke.K);
    render_vector(out, "E", ke.E);
  } else if (what == "jf") {
    XiContext a = XiContext::make(n);
    JF jf = jf_matrices(a);
    render_matrix(out, "U", jf.U);
    render_matrix(out, "J", jf.J);
    render_vector(out, "V", jf.V);
    render_vector(out, "F", jf.F);
  } else if (what == "relations") {
    XiContext a = XiContext::make(n);
    out << relation_system_text(relation_system(a, gk));
  } else {
    fail(Errc::DegenerateInput, "unknown compute target '" + what + "'");
  }
  (void)s;
  return out.str();
}

}  // namespace

extern "C" {

if_session* if_session_new(void) { return new (std::nothrow) if_session; }

void if_session_free(if_session* s) { delete s; }

const char* if_session_error(const if_session* s) {
  return s ? s->error.c_str() : "null session";
}

int if_set_allow_slow(if_session* s, int on) {
  if (!s) return IF_USAGE;
  s->error.clear();
  s->allow_slow = (on != 0);
  return IF_OK;
}

int if_set_threads(if_session* s, int n) {
  if (!s) return IF_USAGE;
  s->error.clear();
  if (n < 1) {
    s->error = "thread cap must be at least 1";
    return IF_USAGE;
  }
  s->threads = n;
  return IF_OK;
}

void if_string_free(char* p) { std::free(p); }

int if_compute(if_session* s, const char* what, int n, const char* sign,
               int i, const char* group, int as_json, char** out) {
  return guarded(s, out, [&]() -> std::string {
    if (what == nullptr) fail(Errc::DegenerateInput, "missing compute target");
    GroupKind gk = parse_group(group);
    Sign sg = parse_sign(sign);
    std::string text = compute_text(s, what, n, sg, i, gk);
    if (!as_json) return text;
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = "compute";
    j["what"] = what;
    j["n"] = n;
    if (sg != Sign::Both) j["sign"] = (sg == Sign::Plus) ? "+" : "-";
    if (std::string(what) == "lambda-i") j["i"] = i;
    j["group"] = group_kind_name(gk);
    j["text"] = text;
    return j.dump(2) + "\n";
  });
}

int if_verify_identity(if_session* s, const char* name, int n, char** out) {
  return guarded(s, out, [&]() -> std::string {
    if (name == nullptr) fail(Errc::DegenerateInput, "missing identity name");
    try {
      verify_identity(name, n, s->allow_slow);
    } catch (const Error& e) {
      if (e.code() == Errc::IdentityFailed)
        fail(Errc::IdentityFailed, std::string("FAIL ") + name +
                                       " n=" + std::to_string(n) + ": " +
                                       e.what());
      throw;
    }
    return std::string("PASS ") + name + " n=" + std::to_string(n) + "\n";
  });
}

int if_verify_all(if_session* s, char** out) {
  return guarded(s, out, [&]() -> std::string {
    std::ostringstream report;
    size_t failures = 0;
    for (const std::string& name : identity_names()) {
      int lo = identity_min_level(name);
      int hi = identity_max_level(name, s->allow_slow);
      for (int n = lo; n <= hi; ++n) {
        try {
          verify_identity(name, n, s->allow_slow);
          report << "PASS " << name << " n=" << n << "\n";
        } catch (const Error& e) {
          if (e.code() != Errc::IdentityFailed) throw;
          ++failures;
          report << "FAIL " << name << " n=" << n << ": " << e.what() << "\n";
        }
      }
    }
    if (failures > 0)
      fail(Errc::IdentityFailed, std::to_string(failures) +
                                     " identity check(s) failed\n" +
                                     report.str());
    return report.str();
  });
}

int if_identity_names(if_session* s, char** out) {
  return guarded(s, out, [&]() -> std::string {
    std::string text;
    for (const std::string& name : identity_names()) text += name + "\n";
    return text;
  });
}

int if_enumerate_group(if_session* s, const char* group, int n,
                       int transvections, int as_json, char** out) {
  return guarded(s, out, [&]() -> std::string {
    GroupKind gk = parse_group(group);
    SContext ctx = group_space(n, gk);
    auto elems = enumerate_group(ctx, gk);
    uint64_t order_f = group_order_formula(gk, n);
    if (!as_json) {
      std::ostringstream text;
      text << "group " << group_kind_name(gk) << " n " << n << "\n";
      text << "order " << elems.size() << " (formula " << order_f << ")\n";
      if (transvections)
        text << "transvections " << count_transvections(elems) << " (formula "
             << transvection_count_formula(gk, n) << ")\n";
      return text.str();
    }
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = "enumerate";
    j["group"] = group_kind_name(gk);
    j["n"] = n;
    j["order"] = elems.size();
    j["order_formula"] = order_f;
    if (transvections) {
      j["transvections"] = count_transvections(elems);
      j["transvections_formula"] = transvection_count_formula(gk, n);
    }
    return j.dump(2) + "\n";
  });
}

int if_hilbert(if_session* s, const char* group, int n, int expand,
               char** out) {
  return guarded(s, out, [&]() -> std::string {
    GroupKind gk = parse_group(group);
    return series_report_json(hilbert_series(gk, n), expand);
  });
}

int if_golden_check(if_session* s, const char* dir, char** out) {
  return guarded(s, out, [&]() -> std::string {
    std::string d = dir ? dir : golden_default_dir();
    golden_check(d);
    return "goldens ok (" + std::to_string(golden_render_all().size()) +
           " files)\n";
  });
}

int if_golden_regenerate(if_session* s, const char* dir, char** out) {
  return guarded(s, out, [&]() -> std::string {
    std::string d = dir ? dir : golden_default_dir();
    std::ostringstream text;
    size_t added = 0, changed = 0, same = 0;
    for (const GoldenDiff& df : golden_regenerate(d)) {
      if (df.created) {
        ++added;
        text << "A " << df.path << " (" << df.new_bytes << " bytes)\n";
      } else if (df.changed) {
        ++changed;
        text << "M " << df.path << " (" << df.old_bytes << " -> "
             << df.new_bytes << " bytes)\n";
      } else {
        ++same;
        text << "= " << df.path << "\n";
      }
    }
    text << added + changed + same << " files: " << added << " added, "
         << changed << " changed, " << same << " unchanged\n";
    return text.str();
  });
}

}  // extern "C"
