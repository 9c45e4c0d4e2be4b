#include "kcomm/certificate.hpp"

namespace kcomm {

const char* producer_tag(Producer p) {
  switch (p) {
    case Producer::UnitTriangular: return "theorem1";
    case Producer::Superdiagonal: return "cor77";
    case Producer::UnitSuperdiagonal: return "cor79";
    case Producer::SpecialLinear: return "theorem2";
    case Producer::VershikKerov: return "theorem3";
  }
  return "?";
}

Producer parse_producer(const std::string& tag) {
  for (Producer p : {Producer::UnitTriangular, Producer::Superdiagonal, Producer::UnitSuperdiagonal,
                     Producer::SpecialLinear, Producer::VershikKerov}) {
    if (tag == producer_tag(p)) return p;
  }
  throw Error(Errc::Parse, "unknown producer '" + tag + "'");
}

std::size_t producer_bound(Producer p, unsigned k) {
  const bool half = p == Producer::Superdiagonal || p == Producer::UnitSuperdiagonal;
  return half ? 2 * k - 3 : 4 * k - 6;
}

bool VerifyReport::passed() const { return failure() == nullptr; }

const CheckResult* VerifyReport::failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

template <class F>
Certificate<F> make_certificate(const RingCtx<F>& ctx, std::vector<Oracle<F>> gens, CommutatorWord word,
                                Producer producer, std::optional<std::size_t> size) {
  Certificate<F> c{ctx, {}, std::move(gens), std::move(word), producer, 0, size, false};
  for (std::size_t i = 0; i < c.generators.size(); ++i) c.names.push_back("g" + std::to_string(i + 1));
  c.claimed_length = c.word.size();
  return c;
}

template <class F>
Certificate<F> concat(const Certificate<F>& a, const Certificate<F>& b, Producer producer) {
  auto gens = a.generators;
  gens.insert(gens.end(), b.generators.begin(), b.generators.end());
  auto word = a.word;
  auto tail = offset_word(b.word, a.generators.size());
  word.insert(word.end(), tail.begin(), tail.end());
  auto c = make_certificate(a.ctx, std::move(gens), std::move(word), producer, a.size);
  c.exceeds_bound = c.word.size() > producer_bound(producer, c.k());
  return c;
}

template <class F>
Certificate<F> conjugate_certificate(const Certificate<F>& c, const Oracle<F>& h) {
  Certificate<F> out = c;
  for (auto& g : out.generators) {
    g = c.size ? dense_oracle(c.ctx, window(conjugate(g, h), *c.size)) : conjugate(g, h);
  }
  return out;
}

template <class F>
Certificate<F> transpose_certificate(const Certificate<F>& c) {
  if (!c.size) throw Error(Errc::Precondition, "transpose needs a finite certificate");
  Certificate<F> out = c;
  for (auto& g : out.generators) {
    Mat<F> w = window(g, *c.size);
    g = dense_oracle(c.ctx, inverse(Mat<F>(w.transpose())));
  }
  out.word = transpose_word(c.word);
  return out;
}

template <class F>
Certificate<F> finite_certificate(const Certificate<F>& c, std::size_t n) {
  Certificate<F> out = c;
  for (auto& g : out.generators) g = dense_oracle(c.ctx, window(g, n));
  out.size = n;
  return out;
}

template <class F>
std::vector<Mat<F>> generator_windows(const Certificate<F>& c, std::size_t n) {
  std::vector<Mat<F>> out;
  for (const auto& g : c.generators) out.push_back(window(g, n));
  return out;
}

template <class F>
VerifyReport verify_certificate(const Certificate<F>& c, const Oracle<F>& target, std::size_t n) {
  VerifyReport report;
  std::size_t w = n;
  if (c.size) {
    w = *c.size;
  } else {
    w = std::max(w, target->corner());
    for (const auto& g : c.generators) w = std::max(w, g->corner());
  }
  report.window = w;
  const Index wn = static_cast<Index>(w);
  const auto gens = generator_windows(c, w);

  CheckResult order{"order", true, ""};
  for (std::size_t i = 0; i < gens.size() && order.passed; ++i) {
    if (!order_divides(gens[i], c.k())) {
      order.passed = false;
      order.detail = "order check failed for " + c.names[i];
    }
  }
  report.checks.push_back(order);

  CheckResult prod{"product", true, ""};
  try {
    const Mat<F> value = eval_word(c.ctx, c.word, gens, wn);
    const Mat<F> want = window(target, w);
    for (Index i = 0; i < wn && prod.passed; ++i) {
      for (Index j = 0; j < wn && prod.passed; ++j) {
        if (value(i, j) != want(i, j)) {
          prod.passed = false;
          prod.detail = "product mismatch at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        }
      }
    }
  } catch (const Error& e) {
    prod.passed = false;
    prod.detail = e.what();
  }
  report.checks.push_back(prod);

  CheckResult len{"length", true, ""};
  const std::size_t bound = producer_bound(c.producer, c.k()) * (c.exceeds_bound ? 2 : 1);
  if (c.claimed_length != c.word.size()) {
    len.passed = false;
    len.detail = "claimed length " + std::to_string(c.claimed_length) + " but word has " +
                 std::to_string(c.word.size()) + " commutators";
  } else if (c.word.size() > bound) {
    len.passed = false;
    len.detail = "length " + std::to_string(c.word.size()) + " exceeds bound " + std::to_string(bound);
  }
  report.checks.push_back(len);
  return report;
}

#define KCOMM_INSTANTIATE_CERT(F)                                                                 \
  template Certificate<F> make_certificate(const RingCtx<F>&, std::vector<Oracle<F>>,           \
                                           CommutatorWord, Producer, std::optional<std::size_t>); \
  template Certificate<F> concat(const Certificate<F>&, const Certificate<F>&, Producer);        \
  template Certificate<F> conjugate_certificate(const Certificate<F>&, const Oracle<F>&);        \
  template Certificate<F> transpose_certificate(const Certificate<F>&);                          \
  template Certificate<F> finite_certificate(const Certificate<F>&, std::size_t);                \
  template std::vector<Mat<F>> generator_windows(const Certificate<F>&, std::size_t);           \
  template VerifyReport verify_certificate(const Certificate<F>&, const Oracle<F>&, std::size_t);

KCOMM_INSTANTIATE_CERT(Rational)
KCOMM_INSTANTIATE_CERT(PrimeField)
KCOMM_INSTANTIATE_CERT(Cyclotomic)

}  // namespace kcomm
