"""
Exchangeable judgments and learning from observations
=====================================================

Draws from an urn of black (b) and white (w) balls are exchangeable:
only how many of each color shows up matters, never the order.  That
symmetry compresses every judgment about sequences into a judgment
about count vectors, turns observation into a reweighting of counts,
and makes the question "could these judgments extend to more draws?"
precisely decidable.  This script follows one assessment through all
three stages.
"""

from fractions import Fraction

from desir import (
    CountSpace,
    Gamble,
    SequenceSpace,
    count_representation,
    exchangeable_extension,
    extend_finite,
    hypgeo_expectation,
    likelihood_weights,
    lift_count_gamble,
    update_count_gamble,
    updated_member,
    updated_sample_member,
)

F = Fraction
BW = ("b", "w")


def show_counts(name, g):
    cells = "  ".join(f"{','.join(map(str, m))}:{g[m]}" for m in g.space.points())
    print(f"  {name}: {cells}")


def show_seq(name, g):
    cells = "  ".join(f"{''.join(x)}:{g[x]}" for x in g.space.points())
    print(f"  {name}: {cells}")


# ----------------------------------------------------------------------
# 1. Counts are all that matter
# ----------------------------------------------------------------------
# A gamble on three draws that pays by position collapses to its
# average over each count class.  Sampling without replacement from a
# known urn then prices any gamble exactly: with two b and two w in the
# urn, the chance that the first three draws show exactly two b is 1/2.

space3 = SequenceSpace(BW, 3)
f = Gamble.from_mapping(
    space3,
    {
        ("b", "b", "b"): 6, ("b", "b", "w"): 3, ("b", "w", "b"): 2,
        ("b", "w", "w"): 1, ("w", "b", "b"): 1, ("w", "b", "w"): 0,
        ("w", "w", "b"): -1, ("w", "w", "w"): -6,
    },
)
print("A position-sensitive gamble on three draws and its count profile:")
show_seq("gamble", f)
show_counts("count profile", count_representation(f))

space4 = SequenceSpace(BW, 4)
two_b_up_front = Gamble.indicator(
    space4, [x for x in space4.points() if x[:3].count("b") == 2]
)
price = hypgeo_expectation(two_b_up_front, (2, 2))
print(f"  urn with counts (2,2): chance of exactly two b in the first three draws = {price}")
print()

# ----------------------------------------------------------------------
# 2. An exchangeable assessment and what observation does to it
# ----------------------------------------------------------------------
# Judged desirable on three draws: win 3 when exactly two draws are b,
# lose 1 otherwise.  Exchangeability supplies the symmetry directions
# for free, and the model keeps sequence and count views in lockstep.

bet = Gamble.from_function(
    space3, lambda x: F(3) if x.count("b") == 2 else F(-1)
)
model = exchangeable_extension(space3, [bet])
print("Assessment on three draws: +3 on exactly two b, -1 otherwise.")
show_counts("as a count gamble", count_representation(bet))
probe = lift_count_gamble(count_representation(bet))
print(f"  symmetrized sequence view accepted: {model.member(probe)}")

# Observing one b leaves two draws.  Each still-possible count vector
# of the remainder is reweighted by how strongly it predicts the
# observation, and a bet on the remaining draws becomes a count gamble
# over all three draws that the original model can judge directly.
weights = likelihood_weights((1, 0), 2)
print("After observing a single b, weights on the remaining two draws' counts:")
for m, w in sorted(weights.as_dict().items(), reverse=True):
    print(f"    remaining {','.join(map(str, m))}: {w}")
tail_bet = Gamble.from_mapping(
    CountSpace(BW, 2), {(2, 0): 1, (1, 1): 1, (0, 2): -2}
)
show_counts("bet on the remaining two draws", tail_bet)
shifted = update_count_gamble(tail_bet, (1, 0))
show_counts("as a gamble on all three draws' counts", shifted)
print(f"  accepted after observing b: {updated_member(model, (1, 0), tail_bet)}")
print()

# ----------------------------------------------------------------------
# 3. Order of observations is irrelevant
# ----------------------------------------------------------------------
# Conditioning the model on the samples (b, w) and (w, b) leads to the
# same verdict on every gamble over the last draw: only the counts of
# the prefix enter.  With one b and one w seen, the original bet comes
# down to the last draw, and the model stands by it either way; a
# different bet at worse odds is declined either way.

tail = SequenceSpace(BW, 1)
own_bet = Gamble.from_mapping(tail, {("b",): 3, ("w",): -1})
print("The assessment's own stake on the last draw (win 3 on b, lose 1 on w):")
print(f"  accepted after seeing b,w: {updated_sample_member(model, ('b', 'w'), own_bet)}")
print(f"  accepted after seeing w,b: {updated_sample_member(model, ('w', 'b'), own_bet)}")
worse = Gamble.from_mapping(tail, {("b",): F(1, 2), ("w",): F(-1, 4)})
print("A separate bet at worse odds (win 1/2 on b, lose 1/4 on w):")
print(f"  accepted after seeing b,w: {updated_sample_member(model, ('b', 'w'), worse)}")
print(f"  accepted after seeing w,b: {updated_sample_member(model, ('w', 'b'), worse)}")
print()

# ----------------------------------------------------------------------
# 4. Which judgments survive more draws?
# ----------------------------------------------------------------------
# A steep bet on two draws differing cannot be part of any exchangeable
# description of three draws: averaging over orders produces a gamble
# that never wins.  The refusal comes with that explicit sure loss.  A
# milder version of the same bet extends without trouble.

space2 = SequenceSpace(BW, 2)
steep = Gamble.from_mapping(
    space2, {("b", "b"): -3, ("b", "w"): 1, ("w", "b"): 1, ("w", "w"): -3}
)
decision = extend_finite(space2, [steep], 1)
print("Steep bet on two draws differing (+1 / -3):")
print(f"  extendable to three draws: {decision.extendable}")
show_seq("sure loss any extension must accept", decision.sequence_loss)

mild = Gamble.from_mapping(
    space2, {("b", "b"): -1, ("b", "w"): 1, ("w", "b"): 1, ("w", "w"): -1}
)
milder = extend_finite(space2, [mild], 1)
print("Mild bet on two draws differing (+1 / -1):")
print(f"  extendable to three draws: {milder.extendable}")
extended = milder.model
show_counts(
    "extended count generator", extended.count_cone.generators[0]
)
