"""Synchronous-update diffusion simulation.

Every model computes iteration t+1 from the complete iteration-t snapshot.
A susceptible node with k infected in-neighbors is infected with probability
1 - (1-beta)^k (independent per-contact trials).  Probabilistic exits from
the infectious class (SIR/SEIR gamma, SIS/SEIS lambda, spontaneous rules
leaving state 1) apply only to nodes that have completed at least one full
iteration while infectious, which is why recovered counts are always zero
at iteration 1.

Determinism contract: every candidate set is enumerated in ascending node
index order and every draw batch is sized by that set, so equal
(graph, config, seeds) reproduce byte-identical traces.  The iteration
stream is derived from config.rngSeed alone; seed selection and initial
blocked-set sampling use separate streams.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidConfig, UnknownSeedNode
from ..graph.model import Graph
from ..rng import STREAM_ITERATION, STREAM_RUN_INIT, derive_rng
from .config import (
    ModelConfig,
    ModelKind,
    resolve_edge_param,
    resolve_node_param,
    validate_config,
)
from .custom import CONTACT, SPONTANEOUS, RuleSet, parse_rules
from .trace import IterationTrace, TraceEntry

BLOCKED = -1
SUSCEPTIBLE = 0
INFECTED = 1


class _Ctx:
    """Influence topology shared by all models."""

    def __init__(self, graph: Graph):
        self.n = graph.n_nodes
        self.src, self.dst = graph.influence_edges
        # In-degree along influence edges; denominators for threshold rules.
        self.in_deg = (
            np.bincount(self.dst, minlength=self.n)
            if self.dst.size
            else np.zeros(self.n, dtype=np.int64)
        )
        self.safe_deg = np.maximum(self.in_deg, 1)

    def counts_in_code(self, state: np.ndarray, code: int) -> np.ndarray:
        """Per-node count of in-neighbors currently in ``code``."""
        if self.src.size == 0:
            return np.zeros(self.n, dtype=np.int64)
        mask = state[self.src] == code
        return np.bincount(self.dst[mask], minlength=self.n)


def _contact_transitions(cand, counts, prob, rng):
    """Nodes of ``cand`` that fire under 1-(1-p)^k per-contact trials."""
    if cand.size == 0:
        return cand
    p = 1.0 - np.power(1.0 - prob, counts[cand].astype(np.float64))
    return cand[rng.random(cand.size) < p]


class _Model:
    """One configured model bound to a graph; subclasses fill in the step."""

    codes: tuple[int, ...] = (0, 1)

    def __init__(self, ctx: _Ctx, params: dict):
        self.ctx = ctx
        self.params = params

    def init(self, state: np.ndarray, seeds: np.ndarray, rng) -> None:
        state[seeds] = INFECTED

    def step(self, state: np.ndarray, age: np.ndarray, rng) -> np.ndarray | None:
        """Return the next state, or None when no future transition is possible."""
        raise NotImplementedError

    # -- shared pieces -------------------------------------------------------

    def _init_blocked(self, state, seeds, rng, fraction):
        """Mark round(fraction*n) non-seed nodes as permanently blocked."""
        pool = np.flatnonzero(state == SUSCEPTIBLE)
        count = int(np.floor(fraction * self.ctx.n + 0.5))
        count = min(count, pool.size)
        if count > 0:
            picked = pool[rng.permutation(pool.size)[:count]]
            state[picked] = BLOCKED


class _SI(_Model):
    codes = (0, 1)

    def step(self, state, age, rng):
        beta = self.params["beta"]
        counts = self.ctx.counts_in_code(state, INFECTED)
        cand = np.flatnonzero((state == SUSCEPTIBLE) & (counts > 0))
        if beta <= 0.0 or cand.size == 0:
            return None
        new = state.copy()
        new[_contact_transitions(cand, counts, beta, rng)] = INFECTED
        return new


class _SIR(_Model):
    codes = (0, 1, 2)
    removed_code = 2
    exit_param = "gamma"

    def step(self, state, age, rng):
        beta = self.params["beta"]
        exit_p = self.params[self.exit_param]
        counts = self.ctx.counts_in_code(state, INFECTED)
        cand = np.flatnonzero((state == SUSCEPTIBLE) & (counts > 0))
        infected = np.flatnonzero(state == INFECTED)
        can_infect = beta > 0.0 and cand.size > 0
        can_exit = exit_p > 0.0 and infected.size > 0
        if not can_infect and not can_exit:
            return None
        new = state.copy()
        if can_infect:
            new[_contact_transitions(cand, counts, beta, rng)] = INFECTED
        if exit_p > 0.0:
            # Holding period: exit draws only for nodes infectious for a
            # full iteration already.
            eligible = infected[age[infected] >= 1]
            if eligible.size:
                leavers = eligible[rng.random(eligible.size) < exit_p]
                new[leavers] = self.removed_code
        return new


class _SIS(_SIR):
    codes = (0, 1)
    removed_code = 0
    exit_param = "lambda"


class _SEIR(_Model):
    codes = (0, 1, 2, 3)
    exposed_code = 2
    infected_exit_code = 3
    exit_param = "gamma"

    def step(self, state, age, rng):
        alpha = self.params["alpha"]
        beta = self.params["beta"]
        exit_p = self.params[self.exit_param]
        counts = self.ctx.counts_in_code(state, INFECTED)
        cand = np.flatnonzero((state == SUSCEPTIBLE) & (counts > 0))
        exposed = np.flatnonzero(state == self.exposed_code)
        infected = np.flatnonzero(state == INFECTED)
        can_expose = beta > 0.0 and cand.size > 0
        can_promote = alpha > 0.0 and exposed.size > 0
        can_exit = exit_p > 0.0 and infected.size > 0
        if not (can_expose or can_promote or can_exit):
            return None
        new = state.copy()
        if can_expose:
            new[_contact_transitions(cand, counts, beta, rng)] = self.exposed_code
        if alpha > 0.0 and exposed.size:
            promoted = exposed[rng.random(exposed.size) < alpha]
            new[promoted] = INFECTED
        if exit_p > 0.0:
            eligible = infected[age[infected] >= 1]
            if eligible.size:
                leavers = eligible[rng.random(eligible.size) < exit_p]
                new[leavers] = self.infected_exit_code
        return new


class _SEIS(_SEIR):
    codes = (0, 1, 2)
    exposed_code = 2
    infected_exit_code = 0
    exit_param = "lambda"


class _Threshold(_Model):
    codes = (0, 1)

    def __init__(self, ctx, params, graph):
        super().__init__(ctx, params)
        self.thresholds = resolve_node_param(params["nodeThreshold"], graph, "nodeThreshold")

    def _met(self, state):
        counts = self.ctx.counts_in_code(state, INFECTED)
        frac = counts / self.ctx.safe_deg
        return np.flatnonzero(
            (state == SUSCEPTIBLE) & (counts > 0) & (frac >= self.thresholds)
        )

    def step(self, state, age, rng):
        met = self._met(state)
        if met.size == 0:
            return None
        new = state.copy()
        new[met] = INFECTED
        return new


class _GeneralizedThreshold(_Threshold):
    codes = (0, 1)

    def step(self, state, age, rng):
        met = self._met(state)
        mu, tau = self.params["mu"], self.params["tau"]
        if met.size == 0 or (mu <= 0.0 and tau <= 0.0):
            return None
        gate = np.clip(rng.normal(mu, tau, met.size), 0.0, 1.0)
        fired = met[rng.random(met.size) < gate]
        new = state.copy()
        new[fired] = INFECTED
        return new


class _Profile(_Model):
    codes = (-1, 0, 1)
    use_threshold = False

    def __init__(self, ctx, params, graph):
        super().__init__(ctx, params)
        self.profile = resolve_node_param(params["profile"], graph, "profile")
        if self.use_threshold:
            self.thresholds = resolve_node_param(
                params["nodeThreshold"], graph, "nodeThreshold"
            )

    def init(self, state, seeds, rng):
        state[seeds] = INFECTED
        self._init_blocked(state, seeds, rng, self.params["blockedFraction"])

    def step(self, state, age, rng):
        counts = self.ctx.counts_in_code(state, INFECTED)
        exposed = (state == SUSCEPTIBLE) & (counts > 0)
        if self.use_threshold:
            exposed &= counts / self.ctx.safe_deg >= self.thresholds
        cand = np.flatnonzero(exposed)
        block_p = 1.0 - self.params["adopterRate"]
        if cand.size == 0 or (block_p <= 0.0 and not (self.profile[cand] > 0).any()):
            return None
        new = state.copy()
        adopted = rng.random(cand.size) < self.profile[cand]
        new[cand[adopted]] = INFECTED
        refusers = cand[~adopted]
        if refusers.size and block_p > 0.0:
            blocked = refusers[rng.random(refusers.size) < block_p]
            new[blocked] = BLOCKED
        return new


class _ProfileThreshold(_Profile):
    use_threshold = True


class _KerteszThreshold(_Model):
    codes = (-1, 0, 1)

    def __init__(self, ctx, params, graph):
        super().__init__(ctx, params)
        self.thresholds = resolve_node_param(params["nodeThreshold"], graph, "nodeThreshold")

    def init(self, state, seeds, rng):
        state[seeds] = INFECTED
        self._init_blocked(state, seeds, rng, self.params["blockedFraction"])

    def step(self, state, age, rng):
        adopter_rate = self.params["adopterRate"]
        counts = self.ctx.counts_in_code(state, INFECTED)
        frac = counts / self.ctx.safe_deg
        susceptible = state == SUSCEPTIBLE
        cand = np.flatnonzero(susceptible)
        met = susceptible & (counts > 0) & (frac >= self.thresholds)
        if cand.size == 0 or (adopter_rate <= 0.0 and not met.any()):
            return None
        new = state.copy()
        spontaneous = rng.random(cand.size) < adopter_rate
        fired = spontaneous | met[cand]
        new[cand[fired]] = INFECTED
        return new


class _IndependentCascades(_Model):
    codes = (0, 1, 2)

    def __init__(self, ctx, params, graph):
        super().__init__(ctx, params)
        per_row = resolve_edge_param(params["edgeThreshold"], graph, "edgeThreshold")
        # Expand per-edge probabilities to the influence-edge array, which
        # duplicates undirected rows in both directions.
        if graph.directed:
            self.edge_p = per_row
        else:
            self.edge_p = np.concatenate([per_row, per_row])

    def step(self, state, age, rng):
        active = np.flatnonzero(state == INFECTED)
        if active.size == 0:
            return None
        new = state.copy()
        if self.ctx.src.size:
            live = (state[self.ctx.src] == INFECTED) & (state[self.ctx.dst] == SUSCEPTIBLE)
            attempts = np.flatnonzero(live)
            if attempts.size:
                wins = attempts[rng.random(attempts.size) < self.edge_p[attempts]]
                new[self.ctx.dst[wins]] = INFECTED
        # Each node attempts its neighbors exactly once, then leaves play.
        new[active] = 2
        return new


class _CustomDeclarative(_Model):
    def __init__(self, ctx, rules: RuleSet):
        super().__init__(ctx, {})
        self.rules = rules
        self.codes = tuple(sorted(rules.states))

    def step(self, state, age, rng):
        counts_for: dict[int, np.ndarray] = {}

        def counts(trigger: int) -> np.ndarray:
            if trigger not in counts_for:
                counts_for[trigger] = self.ctx.counts_in_code(state, trigger)
            return counts_for[trigger]

        possible = False
        for rule in self.rules.rules:
            in_from = state == rule.from_code
            if not in_from.any():
                continue
            if rule.kind == SPONTANEOUS:
                # A node still serving its infectious holding period becomes
                # eligible next iteration, so its mere presence keeps the
                # process alive.
                if rule.p > 0.0:
                    possible = True
            elif rule.kind == CONTACT:
                if rule.p > 0.0 and (in_from & (counts(rule.trigger) > 0)).any():
                    possible = True
            else:
                frac = counts(rule.trigger) / self.ctx.safe_deg
                if (in_from & (counts(rule.trigger) > 0) & (frac >= rule.threshold)).any():
                    possible = True
            if possible:
                break
        if not possible:
            return None

        new = state.copy()
        moved = np.zeros(self.ctx.n, dtype=bool)
        for rule in self.rules.rules:
            in_from = (state == rule.from_code) & ~moved
            if rule.kind == SPONTANEOUS:
                cand = np.flatnonzero(in_from)
                if rule.from_code == INFECTED:
                    cand = cand[age[cand] >= 1]
                if cand.size == 0 or rule.p <= 0.0:
                    continue
                fired = cand[rng.random(cand.size) < rule.p]
            elif rule.kind == CONTACT:
                k = counts(rule.trigger)
                cand = np.flatnonzero(in_from & (k > 0))
                if cand.size == 0 or rule.p <= 0.0:
                    continue
                fired = _contact_transitions(cand, k, rule.p, rng)
            else:
                k = counts(rule.trigger)
                frac = k / self.ctx.safe_deg
                cand = np.flatnonzero(in_from & (k > 0) & (frac >= rule.threshold))
                if cand.size == 0:
                    continue
                fired = cand
            new[fired] = rule.to_code
            moved[fired] = True
        return new


_BUILDERS = {
    ModelKind.SI: lambda ctx, cfg, graph: _SI(ctx, dict(cfg.params)),
    ModelKind.SIR: lambda ctx, cfg, graph: _SIR(ctx, dict(cfg.params)),
    ModelKind.SIS: lambda ctx, cfg, graph: _SIS(ctx, dict(cfg.params)),
    ModelKind.SEIS: lambda ctx, cfg, graph: _SEIS(ctx, dict(cfg.params)),
    ModelKind.SEIR: lambda ctx, cfg, graph: _SEIR(ctx, dict(cfg.params)),
    ModelKind.THRESHOLD: lambda ctx, cfg, graph: _Threshold(ctx, dict(cfg.params), graph),
    ModelKind.GENERALIZED_THRESHOLD: lambda ctx, cfg, graph: _GeneralizedThreshold(
        ctx, dict(cfg.params), graph
    ),
    ModelKind.PROFILE: lambda ctx, cfg, graph: _Profile(ctx, dict(cfg.params), graph),
    ModelKind.PROFILE_THRESHOLD: lambda ctx, cfg, graph: _ProfileThreshold(
        ctx, dict(cfg.params), graph
    ),
    ModelKind.KERTESZ_THRESHOLD: lambda ctx, cfg, graph: _KerteszThreshold(
        ctx, dict(cfg.params), graph
    ),
    ModelKind.INDEPENDENT_CASCADES: lambda ctx, cfg, graph: _IndependentCascades(
        ctx, dict(cfg.params), graph
    ),
}


def _census(state: np.ndarray, codes: tuple[int, ...]) -> dict[int, int]:
    return {code: int((state == code).sum()) for code in codes}


def run_model(graph: Graph, config: ModelConfig, seeds: set[str]) -> IterationTrace:
    """Simulate ``config`` on ``graph`` from the given seed set.

    Returns a trace of maxIterations+1 entries, or fewer when the process
    reaches a state from which no transition is ever possible again.
    """
    validate_config(config, graph)
    seed_idx = np.empty(len(seeds), dtype=np.int64)
    for pos, nid in enumerate(sorted(seeds)):
        idx = graph.index_of.get(nid)
        if idx is None:
            raise UnknownSeedNode(f"seed node {nid!r} not in graph", node=nid)
        seed_idx[pos] = idx

    ctx = _Ctx(graph)
    if config.kind is ModelKind.CUSTOM_DECLARATIVE:
        model: _Model = _CustomDeclarative(ctx, parse_rules(config.rules))
    else:
        model = _BUILDERS[config.kind](ctx, config, graph)

    state = np.zeros(graph.n_nodes, dtype=np.int8)
    model.init(state, seed_idx, derive_rng(config.rng_seed, STREAM_RUN_INIT))

    entries = [
        TraceEntry(
            iteration=0,
            status={
                graph.ids[i]: int(state[i]) for i in np.flatnonzero(state != 0)
            },
            node_count=_census(state, model.codes),
        )
    ]
    age = np.zeros(graph.n_nodes, dtype=np.int64)
    rng = derive_rng(config.rng_seed, STREAM_ITERATION)
    terminated_early = False
    for iteration in range(1, config.max_iterations + 1):
        new_state = model.step(state, age, rng)
        if new_state is None:
            terminated_early = True
            break
        changed = np.flatnonzero(new_state != state)
        entries.append(
            TraceEntry(
                iteration=iteration,
                status={graph.ids[int(i)]: int(new_state[i]) for i in changed},
                node_count=_census(new_state, model.codes),
            )
        )
        age += 1
        age[changed] = 0
        state = new_state
    return IterationTrace(
        model_kind=config.kind.value,
        rng_seed=config.rng_seed,
        n_nodes=graph.n_nodes,
        entries=tuple(entries),
        terminated_early=terminated_early,
    )


def run_dual(
    graph: Graph,
    config_a: ModelConfig,
    config_b: ModelConfig,
    shared_seeds: set[str],
    max_iterations: int,
) -> tuple[IterationTrace, IterationTrace]:
    """Two runs on one graph with identical seeds and iteration budget.

    Each run draws from streams derived from its own rngSeed, so a config
    rerun alone reproduces its half of the dual exactly.
    """
    if max_iterations < 1:
        raise InvalidConfig("maxIterations must be >= 1", field="maxIterations")
    ca = config_a.with_max_iterations(max_iterations)
    cb = config_b.with_max_iterations(max_iterations)
    return run_model(graph, ca, shared_seeds), run_model(graph, cb, shared_seeds)


def run_custom(
    graph: Graph,
    rules: dict,
    seeds: set[str],
    max_iterations: int,
    rng_seed: int,
) -> IterationTrace:
    """Declarative rule-set simulation; see ``custom.parse_rules`` for the schema."""
    config = ModelConfig(
        kind=ModelKind.CUSTOM_DECLARATIVE,
        params={},
        max_iterations=max_iterations,
        rng_seed=rng_seed,
        rules=rules,
    )
    return run_model(graph, config, seeds)
