"""
Polynomials on the simplex and judgments about endless draws
============================================================

When draws could go on forever, a judgment about finitely many of them
becomes a polynomial in the unknown long-run frequencies.  The natural
coordinates are the basis polynomials indexed by count vectors; their
coefficients are exactly the count gambles from the finite story.
Positivity of coefficients certifies positivity of the polynomial, and
raising the degree makes the certificates ever sharper.  This script
shows the coefficients at work, the one blind spot of the method, and
how the whole machinery decides whether an assessment survives
arbitrarily many draws.
"""

from fractions import Fraction

from desir import (
    BernsteinPoly,
    CountSpace,
    FrequencyVector,
    Gamble,
    SequenceSpace,
    bernstein_eval,
    coeff_range,
    extend_infinite,
    from_sequence_gamble,
    has_nonpositive_expansion,
    has_positive_expansion,
    multinomial_lpr,
)

F = Fraction
BW = ("b", "w")


def coeff_line(g):
    return "  ".join(f"{','.join(map(str, m))}:{g[m]}" for m in g.space.points())


# ----------------------------------------------------------------------
# 1. Count gambles are polynomial coefficients
# ----------------------------------------------------------------------
# The basis polynomial for a count vector gives the chance of seeing
# those counts under independent draws with frequency theta, so the
# basis at any fixed degree sums to one.

theta = FrequencyVector(BW, (F(1, 3), F(2, 3)))
print(f"Frequencies theta = (1/3, 2/3); basis values at degree 2:")
total = F(0)
for m in CountSpace(BW, 2).points():
    v = bernstein_eval(m, theta)
    total += v
    print(f"  counts {','.join(map(str, m))}: {v}")
print(f"  sum: {total}")
print()

# ----------------------------------------------------------------------
# 2. From a finite bet to a polynomial
# ----------------------------------------------------------------------
# The steep bet on two draws differing becomes a degree-two polynomial
# whose coefficients are its count profile.  Its expected value under
# any frequency is one exact evaluation away.

space2 = SequenceSpace(BW, 2)
steep = Gamble.from_mapping(
    space2, {("b", "b"): -3, ("b", "w"): 1, ("w", "b"): 1, ("w", "w"): -3}
)
p = from_sequence_gamble(steep)
print("Steep bet on two draws differing, as a polynomial:")
print(f"  coefficients: {coeff_line(p.coefficients)}")
half = FrequencyVector(BW, (F(1, 2), F(1, 2)))
print(f"  value at theta=(1/2,1/2): {p.evaluate(half)}")
print(f"  value at theta=(1/3,2/3): {p.evaluate(theta)}")

# Raising the degree rewrites the same polynomial on a finer basis.
# One raise is enough to expose this one: every coefficient turns
# negative, so the polynomial is negative everywhere on the simplex.
print("  the same polynomial at higher degrees:")
for degree in range(2, 7):
    lo, hi = coeff_range(p, degree)
    print(f"    degree {degree}: coefficients in [{lo}, {hi}]")
print(f"  raised to degree 3: {coeff_line(p.raised(3))}")
print()

# ----------------------------------------------------------------------
# 3. The blind spot: a nonnegative polynomial with a zero
# ----------------------------------------------------------------------
# The squared difference of the two frequencies is nonnegative, and
# zero only where they tie.  No finite degree gives it nonnegative
# coefficients, so the positive-expansion scan stays undecided forever;
# the reverse question is settled at once by evaluating at a corner.

square = BernsteinPoly(
    Gamble.from_mapping(CountSpace(BW, 2), {(2, 0): 1, (1, 1): -1, (0, 2): 1})
)
print("The squared frequency difference (nonnegative, one interior zero):")
for cap in (8, 16):
    verdict = has_positive_expansion(square, cap)
    print(f"  positive expansion up to degree {cap}: {verdict.status}")
for degree in (2, 8, 32):
    lo, _ = coeff_range(square, degree)
    print(f"  smallest coefficient at degree {degree}: {lo}")
never = has_nonpositive_expansion(square, 8)
point = ",".join(str(v) for v in never.witness_point.values)
print(f"  nonpositive expansion: {never.status}"
      f" (value {never.witness_value} at theta=({point}))")
print()

# ----------------------------------------------------------------------
# 4. Judgments that survive endless draws, and ones that cannot
# ----------------------------------------------------------------------
# An assessment extends to arbitrarily many draws exactly when its
# polynomials can sit inside a coherent cone over the simplex.  The
# steep bet fails at degree 3 with an explicit certificate.  The mild
# bet is the negated squared difference: finite extensions never fail,
# yet no finite scan can certify the infinite family, and the decision
# honestly reports its cap.

decision = extend_infinite(space2, [steep], 8)
print("Steep bet (+1 / -3) over endless draws:")
print(f"  status: {decision.status}")
print(f"  certificate degree: {decision.verdict.degree}")
print(f"  certificate coefficients: {coeff_line(decision.verdict.combination)}")

mild = Gamble.from_mapping(
    space2, {("b", "b"): -1, ("b", "w"): 1, ("w", "b"): 1, ("w", "w"): -1}
)
open_case = extend_infinite(space2, [mild], 8)
print("Mild bet (+1 / -1) over endless draws:")
print(f"  status: {open_case.status} (scanned up to degree {open_case.cap})")
print()

# ----------------------------------------------------------------------
# 5. Exact expectations under independent draws
# ----------------------------------------------------------------------
# Fixing a rational frequency vector turns every polynomial into an
# exact price, linear in the coefficients and multiplicative over
# independent observations.

print("Exact prices at theta = (1/3, 2/3):")
print(f"  steep bet: {multinomial_lpr(theta, p.coefficients)}")
print(f"  squared difference: {multinomial_lpr(theta, square.coefficients)}")
