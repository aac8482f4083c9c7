"""
The embedding order on interior spaces over a bounded domain and the
least upper bound used to combine two facts about the same function.

Points are compared in the ``(n/p, s)`` diagram: Sobolev embeddings run
down the lines of slope 1 and, because the domain has finite measure,
horizontally to the right.
"""

from __future__ import annotations

import dataclasses
import logging
from collections import deque
from fractions import Fraction

from ordered_set import OrderedSet

from .constants import EmbedRule, Scale
from .errors import BoundarySpaceError, ScaleMismatchError
from .params import DomainCtx, ExtExp, SpaceParam, sobolev_index
from .typing import Dict, List, Optional, Tuple

logger = logging.getLogger("fscalc")

#: longest chain of direct rules tried when looking for a composite embedding
MAX_COMPOSITION = 3

B_SCALE_NOTE = "conservative: B-scale sum-exponent rules"


@dataclasses.dataclass(frozen=True)
class EmbedVerdict:
    """
    Outcome of :func:`embeds`
    """

    #: whether the embedding is derivable
    holds: bool
    #: the rule that derived it (``None`` iff ``holds`` is false)
    rule: Optional[EmbedRule] = None
    #: caveat attached to every B-scale verdict
    strictness_note: str = ""
    #: intermediate spaces of a composite derivation
    witness: Tuple[SpaceParam, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def _validate_pair(a: SpaceParam, b: SpaceParam) -> None:
    if a.is_boundary or b.is_boundary:
        raise BoundarySpaceError("embeddings are only defined for interior spaces")
    if a.scale is not b.scale:
        raise ScaleMismatchError(
            f"cannot compare {a} with {b}: mixed B/F embeddings are not supported"
        )


def _direct_rule(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> Optional[EmbedRule]:
    if a == b:
        return EmbedRule.IDENTICAL
    # same p
    if a.p == b.p:
        if a.s > b.s:
            return EmbedRule.SAME_P_HIGHER_S
        if a.s == b.s and a.q <= b.q:
            return EmbedRule.SAME_P_SAME_S_Q_MONOTONE
        return None
    index_a, index_b = sobolev_index(a, ctx), sobolev_index(b, ctx)
    # down a line of slope 1
    if a.s > b.s and index_a >= index_b and a.p < b.p:
        if a.scale is Scale.F or index_a > index_b or a.q <= b.q:
            return EmbedRule.SOBOLEV_SLOPE_1
        return None
    # horizontally to the right
    if a.s == b.s and a.q <= b.q and a.p > b.p:
        return EmbedRule.FINITE_MEASURE_RIGHT
    return None


def _candidates(a: SpaceParam, b: SpaceParam) -> List[SpaceParam]:
    spaces: OrderedSet[SpaceParam] = OrderedSet()
    for s in (a.s, b.s):
        for p in (a.p, b.p):
            for q in (a.q, b.q):
                spaces.add(dataclasses.replace(a, s=s, p=p, q=q))
    return list(spaces)


def _compose(
    a: SpaceParam, b: SpaceParam, ctx: DomainCtx
) -> Optional[Tuple[SpaceParam, ...]]:
    """
    Breadth first search for a chain of direct rules from ``a`` to ``b``
    through spaces sharing their parameters with either end point.
    """
    nodes = _candidates(a, b)
    parents: Dict[SpaceParam, Optional[SpaceParam]] = {a: None}
    depth = {a: 0}
    queue = deque([a])
    while queue:
        current = queue.popleft()
        if depth[current] >= MAX_COMPOSITION:
            continue
        for node in nodes:
            if node in parents or _direct_rule(current, node, ctx) is None:
                continue
            parents[node] = current
            depth[node] = depth[current] + 1
            if node == b:
                chain: List[SpaceParam] = []
                cursor = parents[b]
                while cursor is not None and cursor != a:
                    chain.append(cursor)
                    cursor = parents[cursor]
                return tuple(reversed(chain))
            queue.append(node)
    return None


def embeds(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> EmbedVerdict:
    """
    Decide whether ``a`` embeds continuously into ``b``.

    :param a: the smaller space
    :param b: the larger space
    :raises ScaleMismatchError: when one space is a Besov and the other a
     Triebel-Lizorkin space
    :raises BoundarySpaceError: for spaces on the boundary
    """
    _validate_pair(a, b)
    note = B_SCALE_NOTE if a.scale is Scale.B else ""
    rule = _direct_rule(a, b, ctx)
    if rule is not None:
        return EmbedVerdict(True, rule, note)
    witness = _compose(a, b, ctx)
    if witness is not None:
        logger.debug(
            "%s embeds into %s through %s", a, b, ", ".join(map(str, witness))
        )
        return EmbedVerdict(True, EmbedRule.COMPOSITE, note, witness)
    return EmbedVerdict(False, None, note)


def join(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> SpaceParam:
    """
    Least upper bound of two spaces: the smallest space (for the rules in
    :func:`embeds`) into which both embed.

    The smoothness is the smaller of the two, the Sobolev index the
    smaller of the two and the sum exponent the largest one among the
    inputs that pin the result (those attaining the smoothness, and for
    the B-scale also those attaining the index).
    """
    _validate_pair(a, b)
    if a == b:
        return a
    s = min(a.s, b.s)
    indices = {a: sobolev_index(a, ctx), b: sobolev_index(b, ctx)}
    index = min(indices.values())
    n_over_p = s - index
    if n_over_p < 0:
        logger.warning(
            "join of %s and %s needs p beyond infinity; clamped to p = inf", a, b
        )
        n_over_p = Fraction(0)
    pinned = [x for x in (a, b) if x.s == s]
    if a.scale is Scale.B:
        pinned += [x for x in (a, b) if indices[x] == index and x not in pinned]
    q = max(x.q for x in pinned)
    return dataclasses.replace(a, s=s, p=ExtExp(n_over_p / ctx.n), q=q)


__all__ = ["EmbedVerdict", "embeds", "join"]
