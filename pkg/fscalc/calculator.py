from __future__ import annotations

import logging
import os
from fractions import Fraction

from .bootstrap import (
    bootstrap_dirichlet,
    bootstrap_neumann,
    ns_existence,
    regularity_theorem,
)
from .constants import DEFAULT_EPS, MAX_BOOTSTRAP_STEPS, ConfigVars, Problem
from .errors import ConfigurationError
from .params import DomainCtx, SpaceParam
from .products import Deficit, delta, map_b_sharp, map_b_standard
from .replay import ReplayReport, replay_trace
from .typing import Mapping, Optional, RatLike, Union
from .util import as_rational
from .wrappers import BootstrapTrace, NSQuery, Verdict


class Calculator:
    """
    The configured entry point to the calculus.

    :param eps: loss of deficit on the critical line ``s = n/p``. Falls back
     to :attr:`ConfigVars.EPS` in ``config`` and then to ``1/64``.
    :param max_steps: cap on the number of gains of a bootstrap. Falls back
     to :attr:`ConfigVars.MAX_STEPS` in ``config`` and then to 10000.
    :param config: mapping the configuration keys are read from. Defaults to
     the process environment.

    Explicit arguments take priority over configuration values.
    """

    def __init__(
        self,
        eps: Optional[RatLike] = None,
        max_steps: Optional[int] = None,
        config: Optional[Mapping[str, str]] = None,
    ) -> None:
        self.logger = logging.getLogger("fscalc")
        self._config: Mapping[str, str] = os.environ if config is None else config
        self.eps = self._resolve_eps(eps)
        self.max_steps = self._resolve_max_steps(max_steps)

    def _resolve_eps(self, eps: Optional[RatLike]) -> Fraction:
        source = "argument"
        if eps is None:
            eps, source = self._config.get(ConfigVars.EPS), ConfigVars.EPS
        if eps is None:
            return DEFAULT_EPS
        try:
            value = as_rational(eps)
        except ValueError as e:
            raise ConfigurationError(f"invalid epsilon from {source}: {e}") from e
        if not 0 < value < 1:
            raise ConfigurationError(
                f"epsilon from {source} must lie in (0, 1), got {value}"
            )
        return value

    def _resolve_max_steps(self, max_steps: Optional[int]) -> int:
        value: Union[int, str, None] = max_steps
        source = "argument"
        if value is None:
            value, source = self._config.get(ConfigVars.MAX_STEPS), ConfigVars.MAX_STEPS
        if value is None:
            return MAX_BOOTSTRAP_STEPS
        try:
            steps = int(value)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"invalid step cap from {source}: {value!r}") from e
        if steps < 1:
            raise ConfigurationError(f"step cap from {source} must be positive, got {steps}")
        return steps

    def delta(self, x: SpaceParam, ctx: DomainCtx) -> Deficit:
        return delta(x, ctx, self.eps)

    def map_b_standard(self, x: SpaceParam, ctx: DomainCtx) -> SpaceParam:
        return map_b_standard(x, ctx, self.eps)

    def map_b_sharp(self, x: SpaceParam, ctx: DomainCtx) -> SpaceParam:
        return map_b_sharp(x, ctx)

    def bootstrap(
        self,
        problem: Problem,
        start: SpaceParam,
        target: SpaceParam,
        ctx: DomainCtx,
    ) -> BootstrapTrace:
        runner = bootstrap_dirichlet if problem is Problem.DIRICHLET else bootstrap_neumann
        return runner(start, target, ctx, self.eps, self.max_steps)

    def regularity_theorem(
        self,
        problem: Problem,
        solution: SpaceParam,
        data_target: SpaceParam,
        ctx: DomainCtx,
    ) -> BootstrapTrace:
        return regularity_theorem(
            problem, solution, data_target, ctx, self.eps, self.max_steps
        )

    def ns_existence(self, query: NSQuery) -> Verdict:
        return ns_existence(query)

    def replay(self, trace: BootstrapTrace) -> ReplayReport:
        return replay_trace(trace)

    def __repr__(self) -> str:
        return f"Calculator(eps={self.eps}, max_steps={self.max_steps})"
