#include "entadd/catalog.hpp"

#include "entadd/error.hpp"

namespace entadd {

namespace {

// Conventions used below.
//  * Hypothesis constants (log K, log C, ...) are lets computed from the
//    bindings themselves, at the tightest admissible value.
//  * "iff" statements appear as two records, one per direction, each with
//    the constant chosen to make its premise tight.
//  * E log|V| terms of the continuous statements are written H[V] - Ht[V]:
//    in the continuous case Ht = h - E log|.|, in the discrete case Ht = H, so
//    the terms vanish there exactly as the discrete versions require.
//  * A(X,Y) is H[X1,X2,S] over the coupled copies (X1,Y1),(X2,Y2) given S=X+Y.
const char* const kRegistryText = R"REG(
record max-bound
ref: sum dominates summands | H(X+Y) >= max{H(X),H(Y)}, X,Y independent
domain: both
vars: X Y
lhs: max(H[X],H[Y])
rel: <=
rhs: H[X+Y]
end

record ruzsa-triangle
ref: Ruzsa triangle inequality | d(X,Z) <= d(X,Y) + d(Y,Z), d(X,Y) = H(X'-Y') - H(X)/2 - H(Y)/2
domain: both
vars: X Y Z
lhs: H[X-Z] - 1/2*H[X] - 1/2*H[Z]
rel: <=
rhs: H[X-Y] - 1/2*H[X] - 1/2*H[Y] + H[Y-Z] - 1/2*H[Y] - 1/2*H[Z]
end

record sum-difference
ref: sum-difference inequality | d(X,-Y) <= 3 d(X,Y)
domain: both
vars: X Y
lhs: H[X+Y] - 1/2*H[X] - 1/2*H[Y]
rel: <=
rhs: 3*H[X-Y] - 3/2*H[X] - 3/2*H[Y]
end

record doubling-difference-lower
ref: doubling-difference inequality, left half | d(X,X)/2 <= d(X,-X)
domain: both
vars: X~X'
lhs: 1/2*H[X-X'] - 1/2*H[X]
rel: <=
rhs: H[X+X'] - H[X]
end

record doubling-difference-upper
ref: doubling-difference inequality, right half | d(X,-X) <= 2 d(X,X)
domain: both
vars: X~X'
lhs: H[X+X'] - H[X]
rel: <=
rhs: 2*H[X-X'] - 2*H[X]
end

record sum-submodularity
ref: submodularity for sums | H(X+Y+Z) + H(Y) <= H(X+Y) + H(Y+Z), independent
domain: both
vars: X Y Z
lhs: H[X+Y+Z] + H[Y]
rel: <=
rhs: H[X+Y] + H[Y+Z]
end

record pr-additive-2
ref: additive Plunnecke-Ruzsa, n=2 | H(X+Y1+Y2) <= H(X) + log(K1 K2), log Ki = max(0, H(X+Yi) - H(X))
domain: both
vars: X Y1 Y2
let logK1 = max(0,H[X+Y1] - H[X])
let logK2 = max(0,H[X+Y2] - H[X])
lhs: H[X+Y1+Y2]
rel: <=
rhs: H[X] + logK1 + logK2
end

record pr-additive-3
ref: additive Plunnecke-Ruzsa, n=3 | H(X+Y1+Y2+Y3) <= H(X) + log(K1 K2 K3)
domain: both
vars: X Y1 Y2 Y3
let logK1 = max(0,H[X+Y1] - H[X])
let logK2 = max(0,H[X+Y2] - H[X])
let logK3 = max(0,H[X+Y3] - H[X])
lhs: H[X+Y1+Y2+Y3]
rel: <=
rhs: H[X] + logK1 + logK2 + logK3
end

record pr-iterated-2-2
ref: iterated Plunnecke-Ruzsa with explicit factor n+2m, n=m=2 | H(X1+X2-X3-X4) <= H(X) + 6 log K, log K = max(0, H(X1+X2) - H(X))
domain: both
vars: X~X1~X2~X3~X4
let logK = max(0,H[X1+X2] - H[X])
lhs: H[X1+X2-X3-X4]
rel: <=
rhs: H[X] + 6*logK
end

record pr-iterated-3-1
ref: iterated Plunnecke-Ruzsa with explicit factor n+2m, n=3, m=1 | H(X1+X2+X3-X4) <= H(X) + 5 log K
domain: both
vars: X~X1~X2~X3~X4
let logK = max(0,H[X1+X2] - H[X])
lhs: H[X1+X2+X3-X4]
rel: <=
rhs: H[X] + 5*logK
end

record energy-identity
ref: energy identity | H(X+Y) + A(X,Y) = 2H(X,Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
lhs: H[X+Y] + A
rel: ==
rhs: 2*H[X,Y]
end

record energy-inequality
ref: energy bound | 2H(X,Y) <= 2H(X) + 2H(Y)
domain: discrete
vars: (X,Y)
max-support: 8
lhs: 2*H[X,Y]
rel: <=
rhs: 2*H[X] + 2*H[Y]
end

record energy-slack
ref: energy bound slack | 2H(X) + 2H(Y) - 2H(X,Y) = 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
lhs: 2*H[X] + 2*H[Y] - 2*H[X,Y]
rel: ==
rhs: 2*I[X;Y]
end

record energy-two-forms
ref: entropic additive energy, two forms | H(X1,Y1,X2,Y2,X+Y) = 2H(X,Y) - H(X+Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
lhs: H[X1,Y1,X2,Y2,S]
rel: ==
rhs: 2*H[X,Y] - H[X+Y]
end

record energy-upper-joint
ref: energy upper bound, first step | A(X,Y) <= H(X,Y) + min{H(X),H(Y)}
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
lhs: A
rel: <=
rhs: H[X,Y] + min(H[X],H[Y])
end

record energy-upper
ref: energy upper bound, second step | H(X,Y) + min{H(X),H(Y)} <= H(X) + H(Y) + min{H(X),H(Y)}
domain: discrete
vars: (X,Y)
max-support: 8
lhs: H[X,Y] + min(H[X],H[Y])
rel: <=
rhs: H[X] + H[Y] + min(H[X],H[Y])
end

record energy-equivalence-forward
ref: small sum gives large energy, independent X,Y | H(X+Y) <= H(X)/2 + H(Y)/2 + log C  =>  A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C
domain: discrete
vars: X Y
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X+Y] - 1/2*H[X] - 1/2*H[Y]
lhs: 3/2*H[X] + 3/2*H[Y] - logC
rel: <=
rhs: A
end

record energy-equivalence-backward
ref: large energy gives small sum, independent X,Y | A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C  =>  H(X+Y) <= H(X)/2 + H(Y)/2 + log C
domain: discrete
vars: X Y
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X+Y]
rel: <=
rhs: 1/2*H[X] + 1/2*H[Y] + logC
end

record large-energy-small-sum
ref: large energy gives small sum, any joint | A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C  =>  H(X+Y) <= H(X)/2 + H(Y)/2 + log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X+Y]
rel: <=
rhs: 1/2*H[X] + 1/2*H[Y] + logC
end

record small-sum-large-energy
ref: partial converse for weakly dependent pairs, log C' = I(X;Y) | H(X+Y) <= H(X)/2 + H(Y)/2 + log C  =>  A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C - 2 log C'
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X+Y] - 1/2*H[X] - 1/2*H[Y]
let logC2 = I[X;Y]
lhs: 3/2*H[X] + 3/2*H[Y] - logC - 2*logC2
rel: <=
rhs: A
end

record improved-energy-forward
ref: energy/sum equivalence with mutual information, forward | A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C  =>  H(X+Y) <= H(X)/2 + H(Y)/2 + log C - 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X+Y]
rel: <=
rhs: 1/2*H[X] + 1/2*H[Y] + logC - 2*I[X;Y]
end

record improved-energy-converse
ref: energy/sum equivalence with mutual information, converse | H(X+Y) <= H(X)/2 + H(Y)/2 + log C - 2I(X;Y)  =>  A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X+Y] - 1/2*H[X] - 1/2*H[Y] + 2*I[X;Y]
lhs: 3/2*H[X] + 3/2*H[Y] - logC
rel: <=
rhs: A
end

record symmetric-control
ref: large energy forces close entropies | H(X) <= H(Y) + 2 log C - 2I(X+Y;Y) + 2I(X;Y), log C = 3H(X)/2 + 3H(Y)/2 - A(X,Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X]
rel: <=
rhs: H[Y] + 2*logC - 2*I[X+Y;Y] + 2*I[X;Y]
end

record symmetric-control-mirror
ref: large energy forces close entropies, mirrored | H(Y) <= H(X) + 2 log C - 2I(X+Y;X) + 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[Y]
rel: <=
rhs: H[X] + 2*logC - 2*I[X+Y;X] + 2*I[X;Y]
end

record symmetric-control-abs
ref: large energy forces close entropies, absolute form | |H(X)-H(Y)| <= 2 log C + 2I(X;Y) - 2 min{I(X+Y;X),I(X+Y;Y)}
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: abs(H[X] - H[Y])
rel: <=
rhs: 2*logC + 2*I[X;Y] - 2*min(I[X+Y;X],I[X+Y;Y])
end

record symmetric-control-sharp
ref: large energy forces close entropies, sign as obtained by chaining the energy identity | H(X) <= H(Y) + 2 log C - 2I(X+Y;Y) - 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X]
rel: <=
rhs: H[Y] + 2*logC - 2*I[X+Y;Y] - 2*I[X;Y]
end

record symmetric-control-converse
ref: close entropies give large energy (sharp sign) | H(X) <= H(Y) + 2 log C - 2I(X+Y;Y) - 2I(X;Y)  =>  A(X,Y) >= 3H(X)/2 + 3H(Y)/2 - log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 1/2*H[X] - 1/2*H[Y] + I[X+Y;Y] + I[X;Y]
lhs: 3/2*H[X] + 3/2*H[Y] - logC
rel: <=
rhs: A
end

record asymmetric-energy-forward
ref: asymmetric large energy gives small sum | A(X,Y) >= 2H(X) + H(Y) - log C  =>  H(X+Y) <= H(Y) + log C - 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 2*H[X] + H[Y] - A
lhs: H[X+Y]
rel: <=
rhs: H[Y] + logC - 2*I[X;Y]
end

record asymmetric-energy-chain
ref: asymmetric energy, second inequality | H(Y) + log C - 2I(X;Y) <= H(Y|X) + log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 2*H[X] + H[Y] - A
lhs: H[Y] + logC - 2*I[X;Y]
rel: <=
rhs: H[Y|X] + logC
end

record asymmetric-energy-converse
ref: asymmetric small sum gives large energy | H(X+Y) <= H(Y) + log C - 2I(X;Y)  =>  A(X,Y) >= 2H(X) + H(Y) - log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X+Y] - H[Y] + 2*I[X;Y]
lhs: 2*H[X] + H[Y] - logC
rel: <=
rhs: A
end

record large-sum-small-energy
ref: large sum gives small energy (sign as obtained from the energy identity) | H(X+Y) >= H(X) + H(Y) + log C  =>  A(X,Y) <= H(X) + H(Y) - log C - 2I(X;Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X+Y] - H[X] - H[Y]
lhs: A
rel: <=
rhs: H[X] + H[Y] - logC - 2*I[X;Y]
end

record large-sum-small-energy-converse
ref: small energy gives large sum | A(X,Y) <= H(X) + H(Y) - log C - 2I(X;Y)  =>  H(X+Y) >= H(X) + H(Y) + log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = H[X] + H[Y] - A - 2*I[X;Y]
lhs: H[X] + H[Y] + logC
rel: <=
rhs: H[X+Y]
end

record bsg-lemma
ref: energy upper bound for differences of coupled copies | max{H(X1-X2),H(X1-Y2)} <= 2H(X) + 2H(Y) - A(X,Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
lhs: max(H[X1-X2],H[X1-Y2])
rel: <=
rhs: 2*H[X] + 2*H[Y] - A
end

record bsg-first
ref: entropic BSG, first conclusion | H(X1|X+Y) >= H(X) - 2 log C, log C = 3H(X)/2 + 3H(Y)/2 - A(X,Y)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X] - 2*logC
rel: <=
rhs: H[X1|S]
end

record bsg-second
ref: entropic BSG, second conclusion | H(Y2|X+Y) >= H(Y) - 2 log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[Y] - 2*logC
rel: <=
rhs: H[Y2|S]
end

record bsg-sum
ref: entropic BSG, main conclusion | H(X1+Y2|X+Y) <= H(X)/2 + H(Y)/2 + log C
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: H[X1+Y2|S]
rel: <=
rhs: 1/2*H[X] + 1/2*H[Y] + logC
end

record bsg-conditional-independence
ref: entropic BSG, X1 and Y2 conditionally independent given X+Y | I(X1;Y2|X+Y) = 0
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
lhs: I[X1;Y2|S]
rel: ==
rhs: 0
end

record bsg-theorem
ref: entropic BSG, all three conclusions at once (slack = smallest of the three slacks)
domain: discrete
vars: (X,Y)
max-support: 8
couple: X,Y -> X1,Y1,X2,Y2,S
let A = H[X1,X2,S]
let logC = 3/2*H[X] + 3/2*H[Y] - A
lhs: 0
rel: <=
rhs: min(H[X1|S] - H[X] + 2*logC,H[Y2|S] - H[Y] + 2*logC,1/2*H[X] + 1/2*H[Y] + logC - H[X1+Y2|S])
end

record sidon-bound
ref: doubling upper bound, equality iff Sidon support | s(X) <= H(X) - log2 (1 - sum P(a)^2), s(X) = H(X+X') - H(X)
domain: discrete
vars: X~X'
lhs: H[X+X'] - H[X]
rel: <=
rhs: H[X] - log(2) + log(2)*Coll[X]
end

record sidon-stability
ref: Sidon stability | P(X in B) >= 1 - C/(p_min log 2) for the pruned Sidon set B, C = doubling gap
domain: discrete
vars: X~X'
let C = 2*H[X] - log(2) + log(2)*Coll[X] - H[X+X']
lhs: log(2) - ratio(C,Pmin[X])
rel: <=
rhs: log(2)*SidonRetained[X]
end

record p-star-stability
ref: near-maximal doubling forces a heavy atom | s(X) >= H(X) - eps  =>  max P(a) >= 1 - eps/log 2
domain: discrete
vars: X~X'
let eps = 2*H[X] - H[X+X']
lhs: log(2) - eps
rel: <=
rhs: log(2)*Pmax[X]
end

record inverse-scaling
ref: entropy of the reciprocal | h(1/X) = h(X) - 2E log|X|, i.e. Ht(1/X) = Ht(X)
domain: both
vars: X
support: nonzero
lhs: H[1/X]
rel: ==
rhs: 2*Ht[X] - H[X]
end

record conditional-scaling
ref: random scaling under conditioning, k = (1,2) | Ht(X1 Y, X2 Y^2 | Y) = Ht(X1,X2 | Y)
domain: discrete
vars: (X1,X2,Y)
support: nonzero
lhs: Ht[X1*Y,X2*Y*Y|Y]
rel: ==
rhs: Ht[X1,X2|Y]
end

record mult-ruzsa-triangle
ref: multiplicative Ruzsa triangle | Ht(X/Z) <= Ht(X/Y) + Ht(Y/Z) - Ht(Y)
domain: both
vars: X Y Z
support: nonzero
lhs: Ht[X/Z]
rel: <=
rhs: Ht[X/Y] + Ht[Y/Z] - Ht[Y]
end

record mult-submodularity
ref: multiplicative submodularity | h(XYZ) + h(Y) <= h(XY) + h(YZ)
domain: both
vars: X Y Z
support: nonzero
lhs: H[X*Y*Z] + H[Y]
rel: <=
rhs: H[X*Y] + H[Y*Z]
end

record square-quotient-lower
ref: square-quotient inequality, left half | delta~(X)/2 <= sigma~(X), sigma~ = Ht(X X') - Ht(X), delta~ = Ht(X/X') - Ht(X)
domain: both
vars: X~X'
support: nonzero
lhs: 1/2*Ht[X/X'] - 1/2*Ht[X]
rel: <=
rhs: Ht[X*X'] - Ht[X]
end

record square-quotient-upper
ref: square-quotient inequality, right half | sigma~(X) <= 2 delta~(X)
domain: both
vars: X~X'
support: nonzero
lhs: Ht[X*X'] - Ht[X]
rel: <=
rhs: 2*Ht[X/X'] - 2*Ht[X]
end

record mult-pr-2
ref: multiplicative Plunnecke-Ruzsa, n=2 | h(X Y1 Y2) <= h(X) + log(K1 K2), log Ki = h(X Yi) - h(X)
domain: both
vars: X Y1 Y2
support: nonzero
let logK1 = H[X*Y1] - H[X]
let logK2 = H[X*Y2] - H[X]
lhs: H[X*Y1*Y2]
rel: <=
rhs: H[X] + logK1 + logK2
end

record mult-pr-3
ref: multiplicative Plunnecke-Ruzsa, n=3 | h(X Y1 Y2 Y3) <= h(X) + log(K1 K2 K3)
domain: both
vars: X Y1 Y2 Y3
support: nonzero
let logK1 = H[X*Y1] - H[X]
let logK2 = H[X*Y2] - H[X]
let logK3 = H[X*Y3] - H[X]
lhs: H[X*Y1*Y2*Y3]
rel: <=
rhs: H[X] + logK1 + logK2 + logK3
end

record sum-product-dpi
ref: data-processing bound for X(Y+Z) | h(X(Y+Z)) + h(X,Y,Z) <= h(X,Y+Z) + h(XY,XZ) - E log|X|
domain: discrete
vars: (X,Y,Z)
support: nonzero
lhs: H[X*(Y+Z)] + H[X,Y,Z]
rel: <=
rhs: H[X,Y+Z] + H[X*Y,X*Z] + Ht[X] - H[X]
end

record sum-product-dpi-iid-plus
ref: data-processing bound, i.i.d. case (+,+) | h(X(Y+Z)) <= 2h(XY) + h(X+Y) - 2h(X) - E log|X|
domain: both
vars: X~Y~Z
support: nonzero
lhs: H[X*(Y+Z)]
rel: <=
rhs: 2*H[X*Y] + H[X+Y] - 2*H[X] + Ht[X] - H[X]
end

record sum-product-dpi-iid-minus
ref: data-processing bound, i.i.d. case (-,-) | h(X(Y-Z)) <= 2h(XY) + h(X-Y) - 2h(X) - E log|X|
domain: both
vars: X~Y~Z
support: nonzero
lhs: H[X*(Y-Z)]
rel: <=
rhs: 2*H[X*Y] + H[X-Y] - 2*H[X] + Ht[X] - H[X]
end

record ring-pr
ref: ring Plunnecke-Ruzsa, difference form | h(XY-ZW) <= 5h(XY) + 2h(X+Y) - 6h(X) - 4E log|X|
domain: both
vars: X~Y~Z~W
support: nonzero
lhs: H[X*Y-Z*W]
rel: <=
rhs: 5*H[X*Y] + 2*H[X+Y] - 6*H[X] + 4*Ht[X] - 4*H[X]
end

record ring-pr-sum
ref: ring Plunnecke-Ruzsa, sum form | h(XY+ZW) <= 5h(XY) + h(X+Y) + h(X-Y) - 6h(X) - 4E log|X|
domain: both
vars: X~Y~Z~W
support: nonzero
lhs: H[X*Y+Z*W]
rel: <=
rhs: 5*H[X*Y] + H[X+Y] + H[X-Y] - 6*H[X] + 4*Ht[X] - 4*H[X]
end

record ring-pr-sum-plus
ref: ring Plunnecke-Ruzsa, single-sign form (+) | h(XY+ZW) <= 5h(XY) + 3h(X+Y) - 7h(X) - 4E log|X|
domain: both
vars: X~Y~Z~W
support: nonzero
lhs: H[X*Y+Z*W]
rel: <=
rhs: 5*H[X*Y] + 3*H[X+Y] - 7*H[X] + 4*Ht[X] - 4*H[X]
end

record ring-pr-sum-minus
ref: ring Plunnecke-Ruzsa, single-sign form (-) | h(XY+ZW) <= 5h(XY) + 3h(X-Y) - 7h(X) - 4E log|X|
domain: both
vars: X~Y~Z~W
support: nonzero
lhs: H[X*Y+Z*W]
rel: <=
rhs: 5*H[X*Y] + 3*H[X-Y] - 7*H[X] + 4*Ht[X] - 4*H[X]
end

record ring-helper-plus
ref: helper bound for ring Plunnecke-Ruzsa, signs (+,-) | h(X+Y) + h(X,Y,Z) <= h(X,Y) + h(X-Z,Y+Z)
domain: discrete
vars: (X,Y,Z)
lhs: H[X+Y] + H[X,Y,Z]
rel: <=
rhs: H[X,Y] + H[X-Z,Y+Z]
end

record ring-helper-minus
ref: helper bound for ring Plunnecke-Ruzsa, signs (-,+) | h(X-Y) + h(X,Y,Z) <= h(X,Y) + h(X+Z,Y+Z)
domain: discrete
vars: (X,Y,Z)
lhs: H[X-Y] + H[X,Y,Z]
rel: <=
rhs: H[X,Y] + H[X+Z,Y+Z]
end

record ring-pr-iterated-2
ref: iterated ring Plunnecke-Ruzsa, n=2 | h(X1X2+Y1Y2) <= 3h(X1X2) + 2h(X1X2) + h(X1-Y1) + h(X1+Y1) - 6h(X) - 4E log|X|
domain: both
vars: X~X1~X2~Y1~Y2
support: nonzero
lhs: H[X1*X2+Y1*Y2]
rel: <=
rhs: 3*H[X1*X2] + 2*H[X1*X2] + H[X1-Y1] + H[X1+Y1] - 6*H[X] + 4*Ht[X] - 4*H[X]
end

record ring-pr-iterated-3
ref: iterated ring Plunnecke-Ruzsa, n=3 | h(X1X2X3+Y1Y2Y3) <= 3h(X1X2X3) + 2h(X1X2) + 2h(X1X2X3) + 2h(X1-Y1) + h(X1+Y1) - 9h(X) - 10E log|X|
domain: both
vars: X~X1~X2~X3~Y1~Y2~Y3
support: nonzero
max-support: 5
lhs: H[X1*X2*X3+Y1*Y2*Y3]
rel: <=
rhs: 3*H[X1*X2*X3] + 2*H[X1*X2] + 2*H[X1*X2*X3] + 2*H[X1-Y1] + H[X1+Y1] - 9*H[X] + 10*Ht[X] - 10*H[X]
end

record ring-pr-condensed-2
ref: condensed ring Plunnecke-Ruzsa, n=2 | h(X1X2+Y1Y2) <= h(X1X2) + 4 sigma~(X) + delta(X) + sigma(X)
domain: both
vars: X~X1~X2~Y1~Y2
support: nonzero
lhs: H[X1*X2+Y1*Y2]
rel: <=
rhs: H[X1*X2] + 4*Ht[X1*Y1] - 4*Ht[X] + H[X1-Y1] - H[X] + H[X1+Y1] - H[X]
end

record ring-pr-condensed-3
ref: condensed ring Plunnecke-Ruzsa, n=3 | h(X1X2X3+Y1Y2Y3) <= h(X1X2X3) + 10 sigma~(X) + 2 delta(X) + sigma(X)
domain: both
vars: X~X1~X2~X3~Y1~Y2~Y3
support: nonzero
max-support: 5
lhs: H[X1*X2*X3+Y1*Y2*Y3]
rel: <=
rhs: H[X1*X2*X3] + 10*Ht[X1*Y1] - 10*Ht[X] + 2*H[X1-Y1] - 2*H[X] + H[X1+Y1] - H[X]
end

record general-ring-pr-2-2
ref: general ring Plunnecke-Ruzsa, m=2, n=2, first bound | h(sum_i prod_j Xij) <= h(X11 X12) + (m-1)[(n+2)(n-1) sigma~ + (n-1) delta + sigma]
domain: both
vars: X~X11~X12~X21~X22
support: nonzero
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12+X21*X22]
rel: <=
rhs: H[X11*X12] + 4*st + dl + sg
end

record general-ring-pr-2-2-expanded
ref: general ring Plunnecke-Ruzsa, m=2, n=2, second bound | h(sum_i prod_j Xij) <= h(X) + ((m-1)(n+2)+1)(n-1) sigma~ + (m-1)(n-1) delta + (m-1) sigma + (n-1) E log|X|
domain: both
vars: X~X11~X12~X21~X22
support: nonzero
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12+X21*X22]
rel: <=
rhs: H[X] + 5*st + dl + sg + H[X] - Ht[X]
end

record general-ring-pr-2-3
ref: general ring Plunnecke-Ruzsa, m=2, n=3, first bound
domain: both
vars: X~X11~X12~X13~X21~X22~X23
support: nonzero
max-support: 5
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12*X13+X21*X22*X23]
rel: <=
rhs: H[X11*X12*X13] + 10*st + 2*dl + sg
end

record general-ring-pr-2-3-expanded
ref: general ring Plunnecke-Ruzsa, m=2, n=3, second bound
domain: both
vars: X~X11~X12~X13~X21~X22~X23
support: nonzero
max-support: 5
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12*X13+X21*X22*X23]
rel: <=
rhs: H[X] + 12*st + 2*dl + sg + 2*H[X] - 2*Ht[X]
end

record general-ring-pr-3-2
ref: general ring Plunnecke-Ruzsa, m=3, n=2, first bound
domain: both
vars: X~X11~X12~X21~X22~X31~X32
support: nonzero
max-support: 5
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12+X21*X22+X31*X32]
rel: <=
rhs: H[X11*X12] + 8*st + 2*dl + 2*sg
end

record general-ring-pr-3-2-expanded
ref: general ring Plunnecke-Ruzsa, m=3, n=2, second bound
domain: both
vars: X~X11~X12~X21~X22~X31~X32
support: nonzero
max-support: 5
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12+X21*X22+X31*X32]
rel: <=
rhs: H[X] + 9*st + 2*dl + 2*sg + H[X] - Ht[X]
end

record general-ring-pr-3-3
ref: general ring Plunnecke-Ruzsa, m=3, n=3, first bound
domain: both
vars: X~X11~X12~X13~X21~X22~X23~X31~X32~X33
support: nonzero
max-support: 4
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12*X13+X21*X22*X23+X31*X32*X33]
rel: <=
rhs: H[X11*X12*X13] + 20*st + 4*dl + 2*sg
end

record general-ring-pr-3-3-expanded
ref: general ring Plunnecke-Ruzsa, m=3, n=3, second bound
domain: both
vars: X~X11~X12~X13~X21~X22~X23~X31~X32~X33
support: nonzero
max-support: 4
let st = Ht[X11*X12] - Ht[X]
let dl = H[X11-X12] - H[X]
let sg = H[X11+X12] - H[X]
lhs: H[X11*X12*X13+X21*X22*X23+X31*X32*X33]
rel: <=
rhs: H[X] + 22*st + 4*dl + 2*sg + 2*H[X] - 2*Ht[X]
end

record ring-pr-log-k
ref: general ring Plunnecke-Ruzsa under sigma, sigma~ <= log K, m=2, n=2 | H(sum prod) <= H(X) + [(n-1) + (m-1)(n^2+3n-3)] log K
domain: discrete
vars: X~X11~X12~X21~X22
support: nonzero
let logK = max(H[X11*X12] - H[X],H[X11+X12] - H[X])
lhs: H[X11*X12+X21*X22]
rel: <=
rhs: H[X] + 8*logK
end

record slopes-plus
ref: entropy of slopes, all-plus | Ht((X+Y)/(Z+W)) + 5Ht(X) <= 4Ht(XY) + 2Ht(X+Y)
domain: both
vars: X~Y~Z~W
support: positive
lhs: Ht[(X+Y)/(Z+W)] + 5*Ht[X]
rel: <=
rhs: 4*Ht[X*Y] + 2*Ht[X+Y]
end

record slopes-minus
ref: entropy of slopes, all-minus | Ht((X-Y)/(Z-W)) + 5Ht(X) <= 4Ht(XY) + 2Ht(X-Y)
domain: continuous
vars: X~Y~Z~W
lhs: Ht[(X-Y)/(Z-W)] + 5*Ht[X]
rel: <=
rhs: 4*Ht[X*Y] + 2*Ht[X-Y]
end

record slopes-lemma-plus
ref: slopes lemma, all-plus, independent X,Y,Z,W,U | Ht((X+Y)/(Z+W)) + Ht(X,Y,Z,W,U) <= Ht(X+Y) + Ht(Z+W) + Ht(UX,UY) + Ht(UZ,UW)
domain: discrete
vars: X Y Z W U
support: positive
lhs: Ht[(X+Y)/(Z+W)] + Ht[X,Y,Z,W,U]
rel: <=
rhs: Ht[X+Y] + Ht[Z+W] + Ht[U*X,U*Y] + Ht[U*Z,U*W]
end

record doubling-trivial-bound
ref: doubling and difference constants are at most the entropy (discrete) | max{sigma(X),delta(X)} <= H(X)
domain: discrete
vars: X~X'
lhs: max(H[X+X'] - H[X],H[X-X'] - H[X])
rel: <=
rhs: H[X]
end
)REG";

}  // namespace

const std::vector<InequalityRecord>& registry() {
  static const std::vector<InequalityRecord> records = parse_records(kRegistryText);
  return records;
}

const InequalityRecord& find_record(const std::string& name) {
  for (const auto& r : registry()) {
    if (r.name == name) return r;
  }
  throw Error(ErrorKind::UnknownRecord, "no record named '" + name + "'");
}

std::string registry_text() {
  std::string out;
  for (const auto& r : registry()) {
    if (!out.empty()) out += "\n";
    out += to_text(r);
  }
  return out;
}

}  // namespace entadd
