#include "kcomm/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kcomm/json_io.hpp"

namespace kcomm::cli {

namespace {

struct FactorJob {
  std::string ring = "Q";
  unsigned k = 2;
  std::string mode = "ut";
  std::string input;
  std::size_t window = 0;
  std::string out;
  std::string report = "text";
};

struct VerifyJob {
  std::string cert;
  std::string input;
  std::size_t window = 0;
  std::string report = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw Error(Errc::Precondition, "cannot write '" + path + "'");
  o << text;
}

int code_for(Errc e) {
  switch (e) {
    case Errc::Parse: return ParseError;
    case Errc::Internal: return InternalError;
    default: return PreconditionFailed;
  }
}

/// Largest prefix and period lengths of periodic descriptors, plus the finite size.
void scan(const Json& j, std::size_t& prefix, std::size_t& period, std::size_t& size) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if ((key == "prefix" || key == "prefix_cols") && v.is_array()) prefix = std::max(prefix, v.size());
      if ((key == "period" || key == "period_cols") && v.is_array()) period = std::max(period, v.size());
      if ((key == "n" || key == "size") && v.is_number_unsigned()) size = std::max(size, v.get<std::size_t>());
      scan(v, prefix, period, size);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) scan(v, prefix, period, size);
  }
}

Json report_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"window", r.window}, {"checks", checks}, {"passed", r.passed()}};
}

void print_report(std::ostream& o, const VerifyReport& r) {
  o << "verification window: " << r.window << "\n";
  for (const auto& c : r.checks) {
    o << "  " << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!c.detail.empty()) o << " (" << c.detail << ")";
    o << "\n";
  }
  o << (r.passed() ? "verified" : "verification FAILED") << "\n";
}

template <class F>
void print_matrix(std::ostream& o, const RingCtx<F>& ctx, const std::string& name, const Mat<F>& m) {
  o << name << " =\n";
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(m.rows()));
  std::size_t width = 1;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      cells[static_cast<std::size_t>(i)].push_back(ctx.format(m(i, j)));
      width = std::max(width, cells[static_cast<std::size_t>(i)].back().size());
    }
  }
  for (const auto& row : cells) {
    o << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) {
      o << (j ? "  " : "") << std::string(width - row[j].size(), ' ') << row[j];
    }
    o << "]\n";
  }
}

std::string word_text(const CommutatorWord& w, const std::vector<std::string>& names) {
  auto pw = [&](std::size_t g, long e) { return e == 1 ? names[g] : names[g] + "^" + std::to_string(e); };
  std::string out;
  for (const auto& t : w) out += "[" + pw(t.x, t.xexp) + "," + pw(t.y, t.yexp) + "]";
  return out.empty() ? "I" : out;
}

template <class F>
int factor_typed(const FactorJob& job, const RingSpec& spec, const Json& input, const std::string& input_text,
                 std::ostream& out, std::ostream& err) {
  const auto ctx = make_ring<F>(spec, job.k);
  Certificate<F> cert;
  Oracle<F> target;
  if (job.mode == "ut") {
    if (input.is_object() && input.value("kind", "") == "dense") {
      const Mat<F> a = dense_from_json(ctx, input);
      cert = factor_unitriangular(ctx, a);
      target = dense_oracle(ctx, a);
    } else {
      target = oracle_from_json(ctx, input);
      if (target->corner() != 0) throw Error(Errc::Precondition, "input must be upper triangular");
      cert = factor_unitriangular(target);
    }
  } else if (job.mode == "sl") {
    const Mat<F> a = dense_from_json(ctx, input);
    cert = factor_sl(ctx, a);
    target = dense_oracle(ctx, a);
  } else {
    const auto m = vk_from_json(ctx, input);
    cert = factor_vk(ctx, m);
    target = m.oracle(ctx);
  }
  const std::size_t n = job.window ? job.window : default_window(input_text, job.k);
  const auto report = verify_certificate(cert, target, n);
  const std::string text = canonical_dump(certificate_to_json(cert));
  std::ostream& summary = job.out.empty() ? err : out;
  if (job.out.empty()) {
    out << text;
  } else {
    write_file(job.out, text);
  }
  const std::size_t bound = producer_bound(cert.producer, job.k);
  if (job.report == "json") {
    Json j = report_json(report);
    j["mode"] = job.mode;
    j["ring"] = spec.str();
    j["k"] = job.k;
    j["word_length"] = cert.word.size();
    j["bound"] = bound;
    j["exceeds_bound"] = cert.exceeds_bound;
    summary << canonical_dump(j);
  } else {
    summary << "mode: " << job.mode << "  ring: " << spec.str() << "  k: " << job.k << "\n";
    summary << "word length: " << cert.word.size() << "\n";
    summary << "claimed bound: " << bound << " (4k-6)\n";
    if (cert.exceeds_bound) summary << "note: fallback route, length within 8k-12 = " << 2 * bound << "\n";
    print_report(summary, report);
  }
  if (!report.passed()) {
    err << "error: produced certificate failed verification (" << report.failure()->detail << ")\n";
    return InternalError;
  }
  return Ok;
}

template <class F>
int verify_typed(const VerifyJob& job, const CertificateHeader& header, const Json& cert_json, const Json& input,
                 const std::string& input_text, std::ostream& out) {
  const auto ctx = make_ring<F>(header.ring, header.k, false);
  const auto cert = certificate_from_json(ctx, cert_json);
  const auto target = oracle_from_json(ctx, input);
  const std::size_t n = job.window ? job.window : default_window(input_text, header.k);
  const auto report = verify_certificate(cert, target, n);
  if (job.report == "json") {
    out << canonical_dump(report_json(report));
  } else {
    print_report(out, report);
  }
  return report.passed() ? Ok : VerifyFailed;
}

int demo_lemma6(std::ostream& out) {
  const auto ctx = make_ring<Cyclotomic>(RingSpec::parse("cyclo:4"), 4);
  const Index n = 8;
  const auto j = superdiag_oracle(ctx, PeriodicSeq<Cyclotomic>({ctx.from_int(2)}, {ctx.one(), ctx.from_int(3)}));
  const auto [bo, co] = bc_pair(j);
  const Mat<Cyclotomic> b = window(bo, n), c = window(co, n);
  out << "F_4(B,C) = " << word_text(f_word(4), {"B", "C"}) << "\n";
  out << "B, C: order-4 pair over cyclo:4 on the 8-window, superdiagonal (2, 1, 3, 1, 3, ...)\n";
  bool all = true;
  for (unsigned i = 2; i <= 4; ++i) {
    const Mat<Cyclotomic> lhs = power(mul(b, c), i);
    const Mat<Cyclotomic> word = eval_word(ctx, f_word(i), {b, c}, n);
    const bool ok = same(lhs, mul(mul(mul(word, power(c, i - 1)), power(b, i)), c));
    all = all && ok;
    out << "(BC)^" << i << " = F_" << i << "(B,C) C^" << i - 1 << " B^" << i << " C: " << (ok ? "holds" : "FAILS") << "\n";
  }
  const bool closed = same(power(mul(b, c), 4), eval_word(ctx, f_word(4), {b, c}, n));
  out << "(BC)^4 = F_4(B,C): " << (closed ? "holds" : "FAILS") << "\n";
  return all && closed ? Ok : InternalError;
}

int demo_lemma5(std::ostream& out) {
  const auto ctx = make_ring<Rational>(RingSpec::parse("Q"), 2);
  const Index n = 6;
  const auto j = superdiag_oracle(ctx, PeriodicSeq<Rational>::constant(ctx.one()));
  const auto [bo, co] = bc_pair(j);
  const Mat<Rational> b = window(bo, n), c = window(co, n);
  print_matrix(out, ctx, "B", b);
  print_matrix(out, ctx, "C", c);
  const Mat<Rational> bc = mul(b, c);
  print_matrix(out, ctx, "BC", bc);
  const bool inv = is_identity(mul(b, b)) && is_identity(mul(c, c));
  out << "B^2 = C^2 = I: " << (inv ? "holds" : "FAILS") << "\n";
  const auto d = coherent_solve(ctx, bc, static_cast<std::size_t>(n - 1));
  out << "coherence data of BC:\n";
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    out << "  D_" << i << " diagonal:";
    for (std::size_t p = 0; p + i < static_cast<std::size_t>(n); ++p) out << " " << ctx.format(d.terms[i].at(p));
    out << "\n";
  }
  bool d2 = d.terms.size() > 2;
  for (std::size_t p = 0; d2 && p + 2 < static_cast<std::size_t>(n); ++p) {
    d2 = d.terms[2].at(p) == (p % 2 ? ctx.one() : ctx.zero());
  }
  out << "D_2 = sum of E_{2i,2i}: " << (d2 ? "holds" : "FAILS") << "\n";
  const bool sup = same(jpart(power(bc, 2)), window(j, n));
  out << "superdiagonal of (BC)^2 equals J: " << (sup ? "holds" : "FAILS") << "\n";
  return inv && d2 && sup ? Ok : InternalError;
}

int demo_scalar(std::ostream& out) {
  const auto ctx = make_ring<Cyclotomic>(RingSpec::parse("cyclo:8"), 4);
  const auto alpha = ctx.from_int(-1);
  const auto split = scalar_split(ctx, alpha, 2);
  print_matrix(out, ctx, "F", split.f);
  print_matrix(out, ctx, "G", split.g);
  const Mat<Cyclotomic> target = identity(ctx, 2) * alpha;
  const bool prod = same(mul(split.f, split.g), target);
  out << "F G = -I: " << (prod ? "holds" : "FAILS") << "\n";
  const auto cert = scalar_factor(ctx, alpha, 2);
  out << "word over k = 4: " << word_text(cert.word, cert.names) << "\n";
  out << "length " << cert.word.size() << " = 4k-6\n";
  const auto report = verify_certificate(cert, dense_oracle(ctx, target), 0);
  print_report(out, report);
  return prod && report.passed() ? Ok : InternalError;
}

}  // namespace

std::size_t default_window(const std::string& input_json, unsigned k) {
  std::size_t prefix = 0, period = 0, size = 0;
  scan(parse_json(input_json), prefix, period, size);
  return std::max({2 * (prefix + 2 * period + k), size, std::size_t{4}});
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutator factorization certificates over exact rings", "kcomm"};
  app.require_subcommand(1);

  FactorJob fj;
  auto* factor = app.add_subcommand("factor", "factor a matrix and emit a certificate");
  factor->add_option("--ring", fj.ring, "Q, Fp:<p> or cyclo:<m>")->capture_default_str();
  factor->add_option("--k", fj.k, "order of the generators")->capture_default_str()->check(CLI::Range(2u, 1000u));
  factor->add_option("--mode", fj.mode, "ut, sl or vk")->capture_default_str()->check(CLI::IsMember({"ut", "sl", "vk"}));
  factor->add_option("--input", fj.input, "input matrix JSON")->required();
  factor->add_option("--window", fj.window, "verification window (default from the input)");
  factor->add_option("--out", fj.out, "certificate output (default stdout)");
  factor->add_option("--report", fj.report, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));

  VerifyJob vj;
  auto* verify = app.add_subcommand("verify", "replay a certificate against a matrix");
  verify->add_option("--cert", vj.cert, "certificate JSON")->required();
  verify->add_option("--input", vj.input, "target matrix JSON")->required();
  verify->add_option("--window", vj.window, "verification window (default from the input)");
  verify->add_option("--report", vj.report, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "print a worked construction");
  demo->add_option("name", demo_name, "lemma6-k4, lemma5-k2 or scalar-even-n2")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ParseError;
  }

  try {
    if (factor->parsed()) {
      const RingSpec spec = RingSpec::parse(fj.ring);
      const std::string text = read_file(fj.input);
      const Json input = parse_json(text);
      return dispatch_ring(spec, [&]<class F>() { return factor_typed<F>(fj, spec, input, text, out, err); });
    }
    if (verify->parsed()) {
      const Json cert = parse_json(read_file(vj.cert));
      const std::string text = read_file(vj.input);
      const Json input = parse_json(text);
      const auto header = certificate_header(cert);
      return dispatch_ring(header.ring, [&]<class F>() { return verify_typed<F>(vj, header, cert, input, text, out); });
    }
    if (demo_name == "lemma6-k4") return demo_lemma6(out);
    if (demo_name == "lemma5-k2") return demo_lemma5(out);
    if (demo_name == "scalar-even-n2") return demo_scalar(out);
    err << "error: unknown demo '" << demo_name << "' (lemma6-k4, lemma5-k2, scalar-even-n2)\n";
    return PreconditionFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_for(e.code());
  } catch (const Json::exception& e) {
    err << "error: Parse: " << e.what() << "\n";
    return ParseError;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return InternalError;
  }
}

}  // namespace kcomm::cli
