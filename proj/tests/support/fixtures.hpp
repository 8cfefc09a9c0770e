#pragma once

#include <string>

namespace fixtures {

inline const std::string kUpperBound =
    "(forall x. forall y. exists m. (x < m & y < m)) & (forall c. forall b. forall a. (a < b & b < c -> a < c))"
    " -> forall u. forall v. forall w. exists z. (u < z & v < z & w < z)";

inline const std::string kUpperBoundSkolemized =
    "(forall x. forall y. (x < sk_m(x,y) & y < sk_m(x,y))) & (forall c. forall b. forall a. (a < b & b < c -> a < c))"
    " -> exists z. (sk_u < z & sk_v < z & sk_w < z)";

inline const std::string kUpperBoundSelection =
    "(or (not (and (forall x (sk_v sk_u) (forall y (sk_w) -) (forall y (sk_m(sk_v,sk_w)) -))"
    "              (forall c (sk_m(sk_u,sk_m(sk_v,sk_w))) (forall b (sk_m(sk_v,sk_w)) (forall a (sk_v sk_w) -)))))"
    "    (exists z (sk_m(sk_u,sk_m(sk_v,sk_w))) -))";

// The tautology J, transcribed with t1 = m(v,w) and t2 = m(u,m(v,w)).
inline const std::string kJ =
    "sk_v < sk_m(sk_v,sk_w) & sk_w < sk_m(sk_v,sk_w)"
    " & sk_u < sk_m(sk_u,sk_m(sk_v,sk_w)) & sk_m(sk_v,sk_w) < sk_m(sk_u,sk_m(sk_v,sk_w))"
    " & (sk_v < sk_m(sk_v,sk_w) & sk_m(sk_v,sk_w) < sk_m(sk_u,sk_m(sk_v,sk_w)) -> sk_v < sk_m(sk_u,sk_m(sk_v,sk_w)))"
    " & (sk_w < sk_m(sk_v,sk_w) & sk_m(sk_v,sk_w) < sk_m(sk_u,sk_m(sk_v,sk_w)) -> sk_w < sk_m(sk_u,sk_m(sk_v,sk_w)))"
    " -> sk_u < sk_m(sk_u,sk_m(sk_v,sk_w)) & sk_v < sk_m(sk_u,sk_m(sk_v,sk_w)) & sk_w < sk_m(sk_u,sk_m(sk_v,sk_w))";

// J' as printed: the transitivity line is copied with fresh a, b and c.
inline const std::string kJPrimePrinted =
    "?x1 < sk_m(?x1,?y1) & ?y1 < sk_m(?x1,?y1) & ?x2 < sk_m(?x2,?y2) & ?y2 < sk_m(?x2,?y2)"
    " & (?a1 < ?b1 & ?b1 < ?c1 -> ?a1 < ?c1) & (?a2 < ?b2 & ?b2 < ?c2 -> ?a2 < ?c2)"
    " -> sk_u < ?z & sk_v < ?z & sk_w < ?z";

// J' as obtained from its predecessor L', where the copies of the
// transitivity line share b and c.
inline const std::string kJPrimeFromL =
    "?x0 < sk_m(?x0,?y0) & ?y0 < sk_m(?x0,?y0) & ?x1 < sk_m(?x1,?y1) & ?y1 < sk_m(?x1,?y1)"
    " & (?a0 < ?b & ?b < ?c -> ?a0 < ?c) & (?a1 < ?b & ?b < ?c -> ?a1 < ?c)"
    " -> sk_u < ?z & sk_v < ?z & sk_w < ?z";

inline const std::string kPropertyCOne = "exists a. (~(exists b. p(b)) | p(a))";

inline const std::string kFalseLemmaB =
    "((~(exists b. p(b))) | exists a. q(a)) | ((exists x. p(x)) & ~(exists y. q(y)))";

}  // namespace fixtures
