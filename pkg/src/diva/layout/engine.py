"""Force-directed layout with Barnes-Hut many-body repulsion.

Each tick applies, in order: many-body repulsion over the quadtree, link
attraction toward the rest length, and a centering pull toward the origin.
All three write into a velocity buffer; the tick then damps velocities and
integrates positions, and alpha cools geometrically.  Every step is
deterministic, so two runs over the same graph produce bit-equal coordinates.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidParameter
from ..graph.model import Graph
from ._kernels import (
    accumulate,
    apply_manybody,
    build_quadtree,
    manybody_exact,
)
from .params import LayoutParams, LayoutState

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_RADIUS_STEP = 10.0
_STACK_SIZE = 512


def initial_positions(n: int) -> np.ndarray:
    """Deterministic phyllotaxis spiral; node 0 sits exactly at the origin."""
    if n < 1:
        raise InvalidParameter("layout needs at least one node", field="n")
    idx = np.arange(n, dtype=np.float64)
    radius = _RADIUS_STEP * np.sqrt(idx)
    angle = idx * _GOLDEN_ANGLE
    return np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)


class _ForcePass:
    """Reusable per-graph buffers for the tick loop."""

    def __init__(self, graph: Graph, params: LayoutParams):
        params.validate()
        self.params = params
        n = graph.n_nodes
        self.n = n
        edges = graph.edges
        self.src = edges[:, 0].astype(np.int64)
        self.dst = edges[:, 1].astype(np.int64)
        # Link strength and bias follow the usual degree heuristic: weak
        # springs between hubs, endpoints share displacement by degree.
        deg = np.maximum(graph.degrees.astype(np.float64), 1.0)
        ds = deg[self.src]
        dt = deg[self.dst]
        self.link_strength = 1.0 / np.minimum(ds, dt)
        self.bias = ds / (ds + dt)
        cap = max(16, 8 * n)
        self.child = np.empty((cap, 4), dtype=np.int64)
        self.cellx = np.empty(cap, dtype=np.float64)
        self.celly = np.empty(cap, dtype=np.float64)
        self.half = np.empty(cap, dtype=np.float64)
        self.first_node = np.empty(cap, dtype=np.int64)
        self.next_node = np.empty(n, dtype=np.int64)
        self.count = np.empty(cap, dtype=np.float64)
        self.comx = np.empty(cap, dtype=np.float64)
        self.comy = np.empty(cap, dtype=np.float64)
        self.stack = np.empty(_STACK_SIZE, dtype=np.int64)

    def manybody(self, pos: np.ndarray, vel: np.ndarray, alpha: float) -> None:
        p = self.params
        if p.charge_strength == 0.0 or self.n < 2:
            return
        x = np.ascontiguousarray(pos[:, 0])
        y = np.ascontiguousarray(pos[:, 1])
        vx = np.zeros(self.n)
        vy = np.zeros(self.n)
        if p.theta == 0.0:
            manybody_exact(x, y, vx, vy, p.charge_strength, alpha)
        else:
            n_cells = build_quadtree(
                x, y, self.child, self.cellx, self.celly, self.half,
                self.first_node, self.next_node,
            )
            if n_cells < 0:
                # Tree overflow (pathological coincidence); exact sum instead.
                manybody_exact(x, y, vx, vy, p.charge_strength, alpha)
            else:
                accumulate(
                    n_cells, x, y, self.child, self.first_node, self.next_node,
                    self.count, self.comx, self.comy,
                )
                apply_manybody(
                    x, y, vx, vy, p.charge_strength, alpha, p.theta, n_cells,
                    self.child, self.half, self.first_node, self.next_node,
                    self.count, self.comx, self.comy, self.stack,
                )
        vel[:, 0] += vx
        vel[:, 1] += vy

    def links(self, pos: np.ndarray, vel: np.ndarray, alpha: float) -> None:
        if self.src.size == 0:
            return
        p = pos + vel
        d = p[self.dst] - p[self.src]
        dist = np.hypot(d[:, 0], d[:, 1])
        degenerate = dist == 0.0
        if degenerate.any():
            d[degenerate, 0] = 1e-6
            d[degenerate, 1] = -1e-6
            dist[degenerate] = math.hypot(1e-6, 1e-6)
        scale = (dist - self.params.link_distance) / dist
        scale *= alpha * self.link_strength
        fx = d[:, 0] * scale
        fy = d[:, 1] * scale
        n = self.n
        vel[:, 0] -= np.bincount(self.dst, weights=fx * self.bias, minlength=n)
        vel[:, 1] -= np.bincount(self.dst, weights=fy * self.bias, minlength=n)
        vel[:, 0] += np.bincount(self.src, weights=fx * (1.0 - self.bias), minlength=n)
        vel[:, 1] += np.bincount(self.src, weights=fy * (1.0 - self.bias), minlength=n)

    def centering(self, pos: np.ndarray, vel: np.ndarray, alpha: float) -> None:
        vel += (0.0 - pos) * (self.params.centering_strength * alpha)

    def tick_inplace(self, pos: np.ndarray, vel: np.ndarray, alpha: float) -> float:
        self.manybody(pos, vel, alpha)
        self.links(pos, vel, alpha)
        self.centering(pos, vel, alpha)
        vel *= self.params.velocity_decay
        pos += vel
        return alpha * (1.0 - self.params.alpha_decay)


def many_body_forces(
    positions: np.ndarray, theta: float, charge_strength: float = -30.0,
    alpha: float = 1.0,
) -> np.ndarray:
    """Velocity kicks from repulsion alone, exposed for fidelity checks."""
    pos = np.asarray(positions, dtype=np.float64)
    n = pos.shape[0]
    x = np.ascontiguousarray(pos[:, 0])
    y = np.ascontiguousarray(pos[:, 1])
    vx = np.zeros(n)
    vy = np.zeros(n)
    if n < 2 or charge_strength == 0.0:
        return np.stack([vx, vy], axis=1)
    if theta == 0.0:
        manybody_exact(x, y, vx, vy, charge_strength, alpha)
        return np.stack([vx, vy], axis=1)
    cap = max(16, 8 * n)
    child = np.empty((cap, 4), dtype=np.int64)
    cellx = np.empty(cap, dtype=np.float64)
    celly = np.empty(cap, dtype=np.float64)
    half = np.empty(cap, dtype=np.float64)
    first_node = np.empty(cap, dtype=np.int64)
    next_node = np.empty(n, dtype=np.int64)
    count = np.empty(cap, dtype=np.float64)
    comx = np.empty(cap, dtype=np.float64)
    comy = np.empty(cap, dtype=np.float64)
    stack = np.empty(_STACK_SIZE, dtype=np.int64)
    n_cells = build_quadtree(x, y, child, cellx, celly, half, first_node, next_node)
    if n_cells < 0:
        manybody_exact(x, y, vx, vy, charge_strength, alpha)
        return np.stack([vx, vy], axis=1)
    accumulate(n_cells, x, y, child, first_node, next_node, count, comx, comy)
    apply_manybody(
        x, y, vx, vy, charge_strength, alpha, theta, n_cells,
        child, half, first_node, next_node, count, comx, comy, stack,
    )
    return np.stack([vx, vy], axis=1)


def tick(state: LayoutState, graph: Graph,
         params: LayoutParams | None = None) -> LayoutState:
    """Advance the simulation one step, returning a fresh state."""
    effective = params if params is not None else state.params
    fp = _ForcePass(graph, effective)
    pos = state.positions.astype(np.float64).copy()
    vel = getattr(state, "_velocities", None)
    vel = np.zeros_like(pos) if vel is None else vel.copy()
    alpha = fp.tick_inplace(pos, vel, state.alpha)
    out = LayoutState(
        positions=pos,
        alpha=alpha,
        iterations_run=state.iterations_run + 1,
        converged=alpha < effective.alpha_min,
        params=effective,
    )
    out._velocities = vel
    return out


def compute_layout(graph: Graph, params: LayoutParams | None = None,
                   on_tick=None) -> LayoutState:
    """Run the simulation to its tick budget or until alpha cools out.

    ``on_tick(ticks_done, max_ticks)``, when given, is invoked after every
    step; long-running jobs use it to publish progress.  Final coordinates
    are quantized to 4 decimal places, the precision every serialization
    of a layout carries, so downstream round-trips are exact.
    """
    params = params or LayoutParams()
    params.validate()
    fp = _ForcePass(graph, params)
    pos = initial_positions(graph.n_nodes)
    vel = np.zeros_like(pos)
    alpha = 1.0
    ticks = 0
    while ticks < params.max_ticks and alpha >= params.alpha_min:
        alpha = fp.tick_inplace(pos, vel, alpha)
        ticks += 1
        if on_tick is not None:
            on_tick(ticks, params.max_ticks)
    np.round(pos, 4, out=pos)
    return LayoutState(
        positions=pos,
        alpha=alpha,
        iterations_run=ticks,
        converged=alpha < params.alpha_min,
        params=params,
    )
