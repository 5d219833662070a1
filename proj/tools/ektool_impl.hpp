// ektool: batch front end for the effective K-theory pipeline.
#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ekt/cat/categoricity.hpp"
#include "ekt/error.hpp"
#include "ekt/exact/opnorm.hpp"
#include "ekt/ktheory/ktheory.hpp"

namespace ektool {

using namespace ekt;
using cstar::PresPtr;
using cstar::StarPoly;
using exact::ExactMatrix;
using exact::GQ;
using exact::Ival;
using exact::Rat;
using ekt::codec::Nat;

// ---- instance description ----

struct Instance {
  PresPtr pres;
  std::optional<uhf::UhfCertificate> cert;  // set for direct-limit instances
  std::size_t fd_dim = 0;                   // set for matrix instances
  std::string describe;
};

inline Instance instance_from_spec(const std::string& text) {
  std::stringstream ss(text);
  std::string head;
  ss >> head;
  Instance inst;
  if (head == "fd") {
    std::size_t d = 0;
    if (!(ss >> d) || d == 0) throw ParseError("fd needs a positive dimension");
    inst.pres = cstar::fd_presentation(d);
    inst.fd_dim = d;
    inst.describe = "M_" + std::to_string(d) + "(C)";
    return inst;
  }
  if (head == "sn") {
    std::string rest, line;
    std::getline(ss, line);  // rest of the first line
    while (std::getline(ss, line)) rest += line + "\n";
    auto [pres, cert] = uhf::presentation_from_supernatural(uhf::parse_supernatural(rest));
    inst.pres = pres;
    inst.cert = cert;
    inst.describe = "UHF(sn)";
    return inst;
  }
  if (head == "dims") {
    auto fn = uhf::parse_certificate_dims(text);
    auto limit = std::make_shared<cstar::DirectLimit>(fn);
    inst.pres = cstar::limit_presentation(limit);
    uhf::UhfCertificate cert;
    cert.limit = limit;
    cert.pres = inst.pres;
    cert.canonical = true;
    cert.embed = [limit](std::size_t j, std::size_t, const ExactMatrix& m) {
      return cstar::StageElem::make(limit, j, m);
    };
    cert.embed_point = [limit](std::size_t j, std::size_t amp, const ExactMatrix& m) {
      return cstar::limit_matrix_point(*limit, amp, j, m);
    };
    inst.cert = cert;
    inst.describe = "UHF(dims)";
    return inst;
  }
  throw ParseError("unknown instance kind '" + head + "' (expected fd | sn | dims)");
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- point expressions ----
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ["'"]*
//   atom   := coeff | one | zero | g<N> | e(r,s) | psi(j,r,s) | '(' expr ')'
//   coeff  := ['-'] digits ['/' digits] ['i']

class PointParser {
 public:
  PointParser(std::string text, const Instance& inst) : text_(std::move(text)), inst_(inst) {}

  StarPoly parse() {
    StarPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  const Instance& inst_;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("point expression, offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  unsigned long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoul(text_.substr(start, pos_ - start));
  }

  StarPoly expr() {
    StarPoly acc = term();
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  StarPoly term() {
    StarPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  StarPoly factor() {
    StarPoly a = atom();
    while (eat('\'')) a = a.adjoint();
    return a;
  }

  StarPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      StarPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') return coefficient();
    if (text_.compare(pos_, 3, "one") == 0) {
      pos_ += 3;
      if (!inst_.pres->unit) fail("instance has no unit");
      return *inst_.pres->unit;
    }
    if (text_.compare(pos_, 4, "zero") == 0) {
      pos_ += 4;
      return StarPoly::zero();
    }
    if (text_.compare(pos_, 4, "psi(") == 0) {
      pos_ += 4;
      unsigned long j = integer();
      if (!eat(',')) fail("expected ','");
      unsigned long r = integer();
      if (!eat(',')) fail("expected ','");
      unsigned long s = integer();
      if (!eat(')')) fail("expected ')'");
      if (!inst_.cert) fail("psi(...) needs a direct-limit instance");
      std::size_t nj = inst_.cert->limit->dim_u64(j);
      if (r < 1 || r > nj || s < 1 || s > nj) fail("matrix unit index out of range");
      return inst_.cert->embed_point(j, 1, ExactMatrix::unit(nj, r, s));
    }
    if (c == 'e' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(') {
      pos_ += 2;
      unsigned long r = integer();
      if (!eat(',')) fail("expected ','");
      unsigned long s = integer();
      if (!eat(')')) fail("expected ')'");
      if (inst_.fd_dim == 0) fail("e(r,s) needs a matrix instance");
      if (r < 1 || r > inst_.fd_dim || s < 1 || s > inst_.fd_dim)
        fail("matrix unit index out of range");
      return cstar::scalar_matrix_point(inst_.fd_dim, ExactMatrix::unit(inst_.fd_dim, r, s));
    }
    if (c == 'g') {
      ++pos_;
      return StarPoly::generator(Nat(integer()));
    }
    fail("unexpected character");
  }

  StarPoly coefficient() {
    // a rational scalar times the unit (requires a unital instance)
    Rat num(static_cast<long>(integer()));
    if (eat('/')) num /= static_cast<long>(integer());
    GQ value(num);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      value = GQ(Rat(0), num);
    }
    if (!inst_.pres->unit) fail("scalar atoms need a unital instance");
    return inst_.pres->unit->scaled(value);
  }
};

// label := 'unit' | dword | dword '-' dword, dword := x<N>('*'x<N>)*
inline words::GpWord parse_k0_label(const std::string& text, const kth::K0& k) {
  auto parse_dword = [](const std::string& s) {
    std::vector<Nat> gens;
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (s[pos] == '*') {
        ++pos;
        continue;
      }
      if (s[pos] != 'x') throw ParseError("label, offset " + std::to_string(pos) + ": expected 'x'");
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw ParseError("label: expected a generator index");
      gens.emplace_back(s.substr(start, pos - start));
    }
    if (gens.empty()) throw ParseError("label: empty word");
    return words::SgWord(std::move(gens));
  };
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "unit") {
    auto u = k.unit_label();
    if (!u) throw Error("unit label unavailable for this instance");
    return *u;
  }
  auto dash = t.find('-');
  if (dash == std::string::npos) return k.g.gamma(parse_dword(t));
  return words::gp_concat(k.g.gamma(parse_dword(t.substr(0, dash))),
                          words::gp_inverse(k.g.gamma(parse_dword(t.substr(dash + 1)))));
}

// ---- reports ----

struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  std::vector<std::pair<std::string, std::string>> machine;
  void put(const std::string& k, const std::string& v) {
    lines.emplace_back(k, v);
    machine.emplace_back(k, v);
  }
  void print(std::ostream& os) const {
    for (const auto& [k, v] : lines) os << k << ": " << v << "\n";
    os << "== machine ==\n";
    for (std::size_t i = 0; i < machine.size(); ++i)
      os << machine[i].first << "=" << machine[i].second << (i + 1 < machine.size() ? " " : "\n");
    if (machine.empty()) os << "\n";
  }
};

inline std::string ival_str(const Ival& iv) {
  return "[" + iv.lo.get_str() + ", " + iv.hi.get_str() + "]";
}

// ---- verbs ----

inline int cmd_sn(const std::vector<std::string>& args, std::ostream& os) {
  if (args.size() < 2 || (args[0] != "parse" && args[0] != "print"))
    throw ParseError("usage: sn parse|print FILE");
  uhf::Supernatural sn = uhf::parse_supernatural(slurp(args[1]));
  Report rep;
  rep.put("verb", "sn " + args[0]);
  for (std::size_t j = 0; j <= 8; ++j) {
    std::string stage;
    for (const auto& [p, e] : sn.stage(j)) {
      if (!stage.empty()) stage += " ";
      stage += std::to_string(p) + "^" + std::to_string(e);
    }
    rep.put("h_" + std::to_string(j), stage.empty() ? "1" : stage);
    rep.put("n_" + std::to_string(j), sn.stage_dim(j).get_str());
  }
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_build(const Instance& inst, std::ostream& os) {
  Report rep;
  rep.put("verb", "build");
  rep.put("instance", inst.describe);
  if (inst.cert) {
    std::string dims;
    for (std::size_t j = 0; j <= 6; ++j) {
      if (!dims.empty()) dims += " ";
      dims += inst.cert->limit->dim(j).get_str();
    }
    rep.put("dims[0..6]", dims);
  }
  if (inst.fd_dim) rep.put("dimension", std::to_string(inst.fd_dim));
  if (inst.pres->unit) {
    Ival one = inst.pres->norm(*inst.pres->unit, 10);
    rep.put("unit.norm", ival_str(one));
  }
  rep.put("mode", "computable");
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_norm(const Instance& inst, const std::string& pt, long k, std::ostream& os) {
  StarPoly p = PointParser(pt, inst).parse();
  Ival nv = inst.pres->norm(p, k);
  Report rep;
  rep.put("verb", "norm");
  rep.put("point", pt);
  rep.put("k", std::to_string(k));
  rep.put("norm", ival_str(nv));
  rep.put("width.ok", nv.width() <= exact::pow2(-k) ? "yes" : "no");
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_trace(const Instance& inst, const std::string& pt, long k, std::ostream& os) {
  StarPoly p = PointParser(pt, inst).parse();
  Report rep;
  rep.put("verb", "trace");
  rep.put("point", pt);
  rep.put("k", std::to_string(k));
  if (inst.cert) {
    uhf::TraceResult t = uhf::trace(*inst.cert, p, k);
    rep.put("trace.exact", t.exact.str());
    rep.put("trace.interval", ival_str(t.interval));
  } else if (inst.fd_dim) {
    ExactMatrix m = cstar::eval_scalar_point(p, inst.fd_dim);
    rep.put("trace.exact", exact::trace_exact(m).str());
  } else {
    throw Error("trace needs a matrix or direct-limit instance");
  }
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_proj_classify(const Instance& inst, const std::string& pt, std::ostream& os) {
  StarPoly p = PointParser(pt, inst).parse();
  Report rep;
  rep.put("verb", "proj classify");
  rep.put("point", pt);
  esets::RelationSystem rel = esets::projection_relations();
  Ival res = esets::relation_residual(inst.pres, rel, {p}, 12);
  rep.put("residual", ival_str(res));
  bool exact_proj = false;
  {
    cstar::Element e = inst.pres->eval(p);
    exact_proj = e.adjoint().sub(e).exactly_zero() && e.mul(e).sub(e).exactly_zero();
  }
  rep.put("projection.exact", exact_proj ? "yes" : "no");
  if (exact_proj && inst.pres->info->mvn_invariant) {
    auto inv = inst.pres->info->mvn_invariant(1, p);
    if (inv) rep.put("class.invariant", inv->get_str());
  }
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_k0(const Instance& inst, const std::vector<std::string>& args, std::ostream& os) {
  if (args.empty()) throw ParseError("usage: k0 eq L1 L2 | pos L | rat L");
  kth::K0 k = kth::k0(inst.pres);
  Report rep;
  rep.put("verb", "k0 " + args[0]);
  if (args[0] == "eq") {
    if (args.size() != 3) throw ParseError("k0 eq needs two labels");
    words::GpWord a = parse_k0_label(args[1], k), b = parse_k0_label(args[2], k);
    words::Tri r = k.g.gp.in_kernel(a, b, 512);
    rep.put("labels", args[1] + " ; " + args[2]);
    rep.put("equal", r == words::Tri::Yes ? "yes" : (r == words::Tri::No ? "no" : "unknown"));
    if (r == words::Tri::Unknown) rep.put("fuel", "512");
  } else if (args[0] == "pos") {
    if (args.size() != 2) throw ParseError("k0 pos needs a label");
    words::GpWord a = parse_k0_label(args[1], k);
    words::Tri r = k.cone_decide(a, 8192);
    rep.put("label", args[1]);
    rep.put("positive", r == words::Tri::Yes ? "yes" : (r == words::Tri::No ? "no" : "unknown"));
    if (r == words::Tri::Unknown) rep.put("fuel", "8192");
  } else if (args[0] == "rat") {
    if (args.size() != 2) throw ParseError("k0 rat needs a label");
    words::GpWord a = parse_k0_label(args[1], k);
    auto v = k.to_rational(a);
    rep.put("label", args[1]);
    if (!v) throw Error("no exact rational image for this instance");
    rep.put("rational", v->get_str());
  } else {
    throw ParseError("unknown k0 subverb '" + args[0] + "'");
  }
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_iso(const std::string& cert_a, const std::string& cert_b, const std::string& pt,
                   long k, std::ostream& os) {
  Instance a = instance_from_spec(cert_a), b = instance_from_spec(cert_b);
  if (!a.cert || !b.cert) throw Error("iso needs direct-limit instances on both sides");
  Report rep;
  rep.put("verb", "iso");
  cat::InterleaveResult inter = cat::interleave(*a.cert, *b.cert, 6);
  if (!inter.table) {
    rep.put("interleaving", "none");
    rep.put("note", inter.mismatch_note);
    rep.put("status", "mismatch-suspected");
    rep.print(os);
    return 2;
  }
  std::string ks, ls;
  for (std::size_t j = 0; j < inter.table->k_seq.size(); ++j) {
    if (!ks.empty()) {
      ks += " ";
      ls += " ";
    }
    ks += std::to_string(inter.table->k_seq[j]);
    ls += std::to_string(inter.table->l_seq[j]);
  }
  rep.put("interleaving.k", ks);
  rep.put("interleaving.l", ls);
  StarPoly p = PointParser(pt, a).parse();
  cat::IsoResult iso = cat::iso_approx(*a.cert, *b.cert, p, k);
  if (!iso.image) {
    rep.put("image", "unknown");
    rep.put("note", iso.note);
    rep.put("status", "unknown");
    rep.print(os);
    return 2;
  }
  rep.put("image.point", iso.image->str());
  rep.put("image.norm", ival_str(b.pres->norm(*iso.image, k)));
  uhf::TraceResult ta = uhf::trace(*a.cert, p, k + 2), tb = uhf::trace(*b.cert, *iso.image, k + 2);
  rep.put("trace.source", ta.exact.str());
  rep.put("trace.image", tb.exact.str());
  rep.put("status", "ok");
  rep.print(os);
  return 0;
}

inline int cmd_extract(const Instance& inst, std::size_t stages, std::ostream& os) {
  uhf::ExtractOptions opts;
  opts.stages = stages;
  uhf::ExtractResult r = uhf::extract_certificate(inst.pres, opts);
  Report rep;
  rep.put("verb", "extract-cert");
  rep.put("stages.requested", std::to_string(stages));
  rep.put("stages.completed", std::to_string(r.stages.empty() ? 0 : r.stages.size() - 1));
  std::string dims;
  for (const auto& st : r.stages) {
    if (!dims.empty()) dims += " ";
    dims += std::to_string(st.dim);
  }
  rep.put("dims", dims);
  bool inv2 = true;
  for (const auto& st : r.stages) inv2 = inv2 && st.inv2_exact;
  rep.put("inv2.exact", inv2 ? "yes" : "no");
  if (!r.note.empty()) rep.put("note", r.note);
  rep.put("status", r.complete ? "ok" : "partial");
  rep.print(os);
  return r.complete ? 0 : 2;
}

inline int cmd_k1_smoke(std::size_t labels, words::Fuel fuel, std::ostream& os) {
  kth::K0Nonunital k = kth::k1(cstar::scalar_presentation(), 20000, 800000);
  Report rep;
  rep.put("verb", "k1 smoke");
  rep.put("algebra", "C");
  rep.put("labels", std::to_string(labels));
  rep.put("fuel", std::to_string(fuel));
  bool all = true;
  for (std::size_t n = 0; n < labels; ++n) {
    words::GpWord lab = k.sub.generator_label(Nat(static_cast<unsigned long>(n)));
    words::Tri r = k.ktilde.g.gp.in_kernel(lab, words::GpWord{}, fuel);
    std::string verdict = r == words::Tri::Yes ? "identity" : "unknown";
    rep.put("label." + std::to_string(n), verdict);
    all = all && r == words::Tri::Yes;
  }
  rep.put("status", all ? "ok" : "unknowns-present");
  rep.print(os);
  return all ? 0 : 2;
}

// ---- dispatch ----

inline int run_tool(std::vector<std::string> args, std::ostream& os) {
  try {
    if (args.empty()) {
      os << "usage: ektool <sn|build|norm|trace|proj|k0|iso|extract-cert|k1> ...\n";
      return 1;
    }
    std::string verb = args[0];
    args.erase(args.begin());

    auto take_flag = [&args](const std::string& name) -> std::optional<std::string> {
      for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == name) {
          std::string v = args[i + 1];
          args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
          return v;
        }
      return std::nullopt;
    };
    auto instance_flags = [&]() -> Instance {
      if (auto f = take_flag("--sn")) return instance_from_spec("sn\n" + slurp(*f));
      if (auto f = take_flag("--cert")) return instance_from_spec(slurp(*f));
      if (auto f = take_flag("--pres")) return instance_from_spec(slurp(*f));
      if (auto f = take_flag("--fd")) return instance_from_spec("fd " + *f);
      throw ParseError("no instance: pass --sn FILE, --cert FILE, --pres FILE or --fd N");
    };
    auto k_flag = [&](long dflt) {
      if (auto f = take_flag("-k")) return std::stol(*f);
      return dflt;
    };

    if (verb == "sn") return cmd_sn(args, os);
    if (verb == "build") return cmd_build(instance_flags(), os);
    if (verb == "norm") {
      Instance inst = instance_flags();
      long k = k_flag(10);
      if (args.empty()) throw ParseError("norm needs a point expression");
      return cmd_norm(inst, args[0], k, os);
    }
    if (verb == "trace") {
      Instance inst = instance_flags();
      long k = k_flag(10);
      if (args.empty()) throw ParseError("trace needs a point expression");
      return cmd_trace(inst, args[0], k, os);
    }
    if (verb == "proj") {
      Instance inst = instance_flags();
      if (args.size() < 2 || args[0] != "classify")
        throw ParseError("usage: proj classify PT");
      return cmd_proj_classify(inst, args[1], os);
    }
    if (verb == "k0") {
      Instance inst = instance_flags();
      return cmd_k0(inst, args, os);
    }
    if (verb == "iso") {
      auto a = take_flag("--a"), b = take_flag("--b");
      long k = k_flag(8);
      if (!a || !b || args.size() < 2 || args[0] != "--pt")
        throw ParseError("usage: iso --a CERT --b CERT --pt PT [-k K]");
      return cmd_iso(slurp(*a), slurp(*b), args[1], k, os);
    }
    if (verb == "extract-cert") {
      Instance inst = instance_flags();
      std::size_t stages = 3;
      if (auto f = take_flag("--stages")) stages = std::stoul(*f);
      return cmd_extract(inst, stages, os);
    }
    if (verb == "k1") {
      if (args.empty() || args[0] != "smoke") throw ParseError("usage: k1 smoke [--fuel F]");
      args.erase(args.begin());
      words::Fuel fuel = 2000;
      std::size_t labels = 3;
      if (auto f = take_flag("--fuel")) fuel = std::stoull(*f);
      if (auto f = take_flag("--labels")) labels = std::stoul(*f);
      return cmd_k1_smoke(labels, fuel, os);
    }
    os << "unknown verb: " << verb << "\n";
    return 1;
  } catch (const ParseError& e) {
    os << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    os << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ektool
