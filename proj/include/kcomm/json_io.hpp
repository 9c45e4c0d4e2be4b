#pragma once

// JSON encodings of scalars, matrices, oracles, certificates and VK inputs.
//
// Objects use sorted keys, so dumping a parsed document reproduces the
// canonical bytes.

#include <json.hpp>

#include "kcomm/coherent.hpp"
#include "kcomm/vk.hpp"

namespace kcomm {

using Json = nlohmann::json;

/// Two-space indented dump with a trailing newline.
std::string canonical_dump(const Json& j);
/// Parses text; malformed JSON raises Parse.
Json parse_json(const std::string& text);

template <class F>
Json seq_to_json(const RingCtx<F>& ctx, const PeriodicSeq<F>& s);
template <class F>
PeriodicSeq<F> seq_from_json(const RingCtx<F>& ctx, const Json& j);

template <class F>
Json rows_to_json(const RingCtx<F>& ctx, const Mat<F>& m);
/// Square or n x cols matrix from an array of rows; `cols` is used when there are no rows.
template <class F>
Mat<F> rows_from_json(const RingCtx<F>& ctx, const Json& j, Index cols = 0);

/// {"kind":"dense","n":N,"rows":[...]}.
template <class F>
Json dense_to_json(const RingCtx<F>& ctx, const Mat<F>& m);
template <class F>
Mat<F> dense_from_json(const RingCtx<F>& ctx, const Json& j);

template <class F>
Json oracle_to_json(const Oracle<F>& a);
template <class F>
Oracle<F> oracle_from_json(const RingCtx<F>& ctx, const Json& j);

template <class F>
Json diagseq_to_json(const RingCtx<F>& ctx, const DiagSeq<F>& d);
template <class F>
DiagSeq<F> diagseq_from_json(const RingCtx<F>& ctx, const Json& j);

template <class F>
Json vk_to_json(const RingCtx<F>& ctx, const VKMat<F>& m);
template <class F>
VKMat<F> vk_from_json(const RingCtx<F>& ctx, const Json& j);

template <class F>
Json certificate_to_json(const Certificate<F>& c);
/// Generators are rebuilt inside `ctx`, which must match the header ring.
template <class F>
Certificate<F> certificate_from_json(const RingCtx<F>& ctx, const Json& j);

/// Ring and k from a certificate header.
struct CertificateHeader {
  RingSpec ring;
  unsigned k = 2;
};
CertificateHeader certificate_header(const Json& j);

}  // namespace kcomm
