"""Layered circuit assembly, cost expectations, and parameter training.

Three training strategies are provided. The uniform strategy ("upo") shares a
single (beta, gamma) pair across all layers, so the search stays 2-dimensional
at any depth. The staged strategy ("fpo") optimizes one layer at a time with
earlier layers frozen at their chosen values. The random baseline optimizes
all 2p coordinates from random starts.

All randomness flows from one master seed through counter-based splits, so a
run is reproducible bit for bit. The independent draws of a strategy may run
in parallel; QVITERBI_THREADS caps the worker count and aggregation order is
fixed by draw index either way.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .codes import BitVector, Code
from .errors import LengthError
from .hamiltonians import build_mixer_hamiltonian
from .statevector import (
    CircuitMode,
    Statevector,
    apply_cost_unitary,
    apply_mixer_unitary,
    distances_to,
    extract_codeword_register,
    measure_counts,
    prepare_full_register,
    prepare_uniform_codespace,
)
from .trellis import ml_brute_force

TWO_PI = 2.0 * math.pi

# Nelder-Mead settings: derivative-free, bounded iteration budget, simplex
# tolerances on parameters and cost.
_NM_OPTIONS = {"maxiter": 300, "xatol": 1e-4, "fatol": 1e-6}

# Seed-split roles, combined with stage and draw indices.
_ROLE_INIT = 1
_ROLE_EVAL = 2
_ROLE_MEASURE = 3


@dataclass(frozen=True)
class QaoaParams:
    """Per-layer mixer and cost angles, in radians."""

    betas: tuple[float, ...]
    gammas: tuple[float, ...]
    uniform: bool = False

    def __post_init__(self):
        if len(self.betas) != len(self.gammas):
            raise ValueError("betas and gammas must have equal length")
        if self.uniform and self.p > 1:
            if len(set(self.betas)) != 1 or len(set(self.gammas)) != 1:
                raise ValueError("uniform flag requires all betas equal and all gammas equal")

    @property
    def p(self) -> int:
        return len(self.betas)

    @classmethod
    def uniform_params(cls, p: int, beta: float, gamma: float) -> QaoaParams:
        return cls((float(beta),) * p, (float(gamma),) * p, uniform=True)

    def canonical(self) -> QaoaParams:
        """Angles reduced modulo 2*pi (both unitaries are 2*pi-periodic)."""
        return QaoaParams(
            tuple(float(b) % TWO_PI for b in self.betas),
            tuple(float(g) % TWO_PI for g in self.gammas),
            self.uniform,
        )

    def to_json_dict(self) -> dict:
        return {"p": self.p, "betas": list(self.betas), "gammas": list(self.gammas), "uniform": self.uniform}


@dataclass(frozen=True)
class DrawRecord:
    """One optimizer run: where it started, where it ended, what it achieved."""

    initial_params: QaoaParams
    final_params: QaoaParams
    expectation: float
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "initial_params": self.initial_params.to_json_dict(),
            "final_params": self.final_params.to_json_dict(),
            "expectation": self.expectation,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class TrainingResult:
    strategy: str
    best_params: QaoaParams
    best_expectation: float
    approximation_ratio: float | None
    samples: tuple[DrawRecord, ...]
    distribution: dict[str, float]
    solution_hits: int
    shots: int

    def to_json_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "best_params": self.best_params.to_json_dict(),
            "best_expectation": self.best_expectation,
            "approximation_ratio": self.approximation_ratio,
            "samples": [rec.to_json_dict() for rec in self.samples],
            "distribution": self.distribution,
            "solution_hits": self.solution_hits,
            "shots": self.shots,
        }


def child_seed(master: int, *path: int) -> int:
    """Deterministic 32-bit seed derived from a master seed and an index path."""
    return int(np.random.SeedSequence([int(master), *map(int, path)]).generate_state(1)[0])


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("QVITERBI_THREADS", "1")))
    except ValueError:
        return 1


def _map_draws(fn, count: int) -> list:
    workers = min(_thread_cap(), count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(count)))
    return [fn(j) for j in range(count)]


def run_pqc(
    code: Code,
    received: BitVector,
    params: QaoaParams,
    mode: CircuitMode = CircuitMode.FOLDED,
) -> Statevector:
    """Prepare the codespace superposition and apply p layers.

    Each layer applies the mixer first, then the cost unitary. Folded mode
    simulates n qubits with the direct basis-pair mixer; full mode simulates
    2n qubits with the gate-level circuits.
    """
    if len(received) != code.n:
        raise LengthError(f"received length {len(received)} != n = {code.n}")
    if mode is CircuitMode.FOLDED:
        sv = prepare_uniform_codespace(code)
        method = "pairing"
    else:
        sv = prepare_full_register(code, received)
        method = "gates"
    if params.p == 0:
        return sv
    mixer = build_mixer_hamiltonian(code)
    for beta, gamma in zip(params.betas, params.gammas):
        apply_mixer_unitary(sv, beta, mixer, method=method)
        apply_cost_unitary(sv, gamma, received, mode)
    return sv


def expectation_exact(sv: Statevector, received: BitVector) -> float:
    """Exact cost expectation: sum over basis states of prob * distance."""
    if sv.num_qubits != len(received):
        raise LengthError(f"state has {sv.num_qubits} qubits, received has {len(received)} bits")
    return float(np.dot(sv.probabilities(), distances_to(received)))


def expectation_sampled(sv: Statevector, received: BitVector, shots: int, seed: int) -> float:
    """Cost expectation estimated from a seeded finite-shot measurement."""
    if sv.num_qubits != len(received):
        raise LengthError(f"state has {sv.num_qubits} qubits, received has {len(received)} bits")
    counts = measure_counts(sv, shots, seed)
    r_int = received.to_index()
    total = sum(c * (int(state, 2) ^ r_int).bit_count() for state, c in counts.items())
    return total / shots


def _codeword_state(sv: Statevector, received: BitVector) -> Statevector:
    if sv.num_qubits == 2 * len(received):
        return extract_codeword_register(sv, received)
    return sv


class _Evaluator:
    """Maps a circuit output to a cost value, with counter-split seeds in sampled mode."""

    def __init__(self, received: BitVector, mode: str, shots: int, master: int, stage: int, draw: int):
        if mode not in ("exact", "sampled"):
            raise ValueError("mode must be 'exact' or 'sampled'")
        self.received = received
        self.mode = mode
        self.shots = shots
        self.master = master
        self.stage = stage
        self.draw = draw
        self.calls = 0

    def __call__(self, sv: Statevector) -> float:
        sv = _codeword_state(sv, self.received)
        if self.mode == "exact":
            return expectation_exact(sv, self.received)
        seed = child_seed(self.master, _ROLE_EVAL, self.stage, self.draw, self.calls)
        self.calls += 1
        return expectation_sampled(sv, self.received, self.shots, seed)


def _optimize(objective, x0: np.ndarray) -> tuple[np.ndarray, float, bool]:
    res = minimize(objective, x0, method="Nelder-Mead", options=_NM_OPTIONS)
    return np.asarray(res.x, dtype=float), float(res.fun), bool(res.success)


def _best_index(records: list[DrawRecord]) -> int:
    # First record attaining the minimum keeps selection deterministic.
    best = min(rec.expectation for rec in records)
    return next(i for i, rec in enumerate(records) if rec.expectation == best)


def _finish(
    strategy: str,
    code: Code,
    received: BitVector,
    records: list[DrawRecord],
    best_params: QaoaParams,
    best_expectation: float,
    shots: int,
    seed: int,
    mode: str,
    circuit_mode: CircuitMode,
) -> TrainingResult:
    oracle = ml_brute_force(code, received)
    f_min = oracle.best_metric
    ratio = (best_expectation / f_min) if f_min > 0 else None

    final_sv = _codeword_state(run_pqc(code, received, best_params, circuit_mode), received)
    counts = measure_counts(final_sv, shots, child_seed(seed, _ROLE_MEASURE))
    optimal = {str(c) for c in oracle.best_codewords}
    hits = sum(c for state, c in counts.items() if state in optimal)

    if mode == "exact":
        probs = final_sv.probabilities()
        width = final_sv.num_qubits
        distribution = {
            format(i, f"0{width}b"): float(p) for i, p in enumerate(probs) if p > 1e-15
        }
    else:
        distribution = {state: float(c) for state, c in counts.items()}

    return TrainingResult(
        strategy=strategy,
        best_params=best_params,
        best_expectation=best_expectation,
        approximation_ratio=ratio,
        samples=tuple(records),
        distribution=distribution,
        solution_hits=hits,
        shots=shots,
    )


def _check_training_args(code: Code, received: BitVector, p: int, q: int, shots: int) -> None:
    if len(received) != code.n:
        raise LengthError(f"received length {len(received)} != n = {code.n}")
    if p < 1:
        raise ValueError("p must be at least 1")
    if q < 1:
        raise ValueError("q must be at least 1")
    if shots < 1:
        raise ValueError("shots must be at least 1")


def train_upo(
    code: Code,
    received: BitVector,
    p: int,
    q: int,
    shots: int,
    seed: int,
    mode: str = "exact",
    circuit_mode: CircuitMode = CircuitMode.FOLDED,
) -> TrainingResult:
    """Uniform-parameter training: all p layers share one (beta, gamma) pair.

    q independent random starts are each refined by Nelder-Mead over the
    2-dimensional shared-parameter space; the draw with the lowest cost
    expectation wins.
    """
    _check_training_args(code, received, p, q, shots)

    def run_draw(j: int) -> DrawRecord:
        rng = np.random.default_rng(child_seed(seed, _ROLE_INIT, 0, j))
        x0 = rng.uniform(0.0, TWO_PI, 2)
        evaluator = _Evaluator(received, mode, shots, seed, 0, j)

        def objective(v):
            return evaluator(run_pqc(code, received, QaoaParams.uniform_params(p, v[0], v[1]), circuit_mode))

        x, fx, ok = _optimize(objective, x0)
        return DrawRecord(
            initial_params=QaoaParams.uniform_params(p, x0[0], x0[1]),
            final_params=QaoaParams.uniform_params(p, x[0], x[1]).canonical(),
            expectation=fx,
            converged=ok,
        )

    records = _map_draws(run_draw, q)
    best = records[_best_index(records)]
    return _finish("UPO", code, received, records, best.final_params, best.expectation,
                   shots, seed, mode, circuit_mode)


def train_fpo(
    code: Code,
    received: BitVector,
    p: int,
    q: int,
    shots: int,
    seed: int,
    mode: str = "exact",
    circuit_mode: CircuitMode = CircuitMode.FOLDED,
) -> TrainingResult:
    """Staged training: grow the circuit one layer at a time.

    At stage l the l-1 previously chosen pairs stay frozen and only
    (beta_l, gamma_l) is optimized, again as the best of q random starts.
    The reported samples are the final stage's records.
    """
    _check_training_args(code, received, p, q, shots)

    fixed_b: list[float] = []
    fixed_g: list[float] = []
    records: list[DrawRecord] = []
    best_expectation = math.nan
    for stage in range(p):
        base_b, base_g = tuple(fixed_b), tuple(fixed_g)

        def run_draw(j: int) -> DrawRecord:
            rng = np.random.default_rng(child_seed(seed, _ROLE_INIT, stage, j))
            x0 = rng.uniform(0.0, TWO_PI, 2)
            evaluator = _Evaluator(received, mode, shots, seed, stage, j)

            def objective(v):
                params = QaoaParams(base_b + (v[0],), base_g + (v[1],))
                return evaluator(run_pqc(code, received, params, circuit_mode))

            x, fx, ok = _optimize(objective, x0)
            return DrawRecord(
                initial_params=QaoaParams(base_b + (x0[0],), base_g + (x0[1],)),
                final_params=QaoaParams(base_b + (x[0],), base_g + (x[1],)).canonical(),
                expectation=fx,
                converged=ok,
            )

        records = _map_draws(run_draw, q)
        best = records[_best_index(records)]
        fixed_b.append(best.final_params.betas[-1])
        fixed_g.append(best.final_params.gammas[-1])
        best_expectation = best.expectation

    best_params = QaoaParams(tuple(fixed_b), tuple(fixed_g))
    return _finish("FPO", code, received, records, best_params, best_expectation,
                   shots, seed, mode, circuit_mode)


def train_random(
    code: Code,
    received: BitVector,
    p: int,
    q: int,
    shots: int,
    seed: int,
    mode: str = "exact",
    circuit_mode: CircuitMode = CircuitMode.FOLDED,
) -> TrainingResult:
    """Random-start baseline over the full 2p-dimensional parameter space."""
    _check_training_args(code, received, p, q, shots)

    def run_draw(j: int) -> DrawRecord:
        rng = np.random.default_rng(child_seed(seed, _ROLE_INIT, 0, j))
        x0 = rng.uniform(0.0, TWO_PI, 2 * p)
        evaluator = _Evaluator(received, mode, shots, seed, 0, j)

        def objective(v):
            params = QaoaParams(tuple(v[:p]), tuple(v[p:]))
            return evaluator(run_pqc(code, received, params, circuit_mode))

        x, fx, ok = _optimize(objective, x0)
        return DrawRecord(
            initial_params=QaoaParams(tuple(x0[:p]), tuple(x0[p:])),
            final_params=QaoaParams(tuple(x[:p]), tuple(x[p:])).canonical(),
            expectation=fx,
            converged=ok,
        )

    records = _map_draws(run_draw, q)
    best = records[_best_index(records)]
    return _finish("RANDOM", code, received, records, best.final_params, best.expectation,
                   shots, seed, mode, circuit_mode)


TRAINERS = {"upo": train_upo, "fpo": train_fpo, "random": train_random}


def landscape_scan(
    code: Code,
    received: BitVector,
    p: int,
    grid: int,
    circuit_mode: CircuitMode = CircuitMode.FOLDED,
) -> np.ndarray:
    """Exact cost expectation over a uniform (beta, gamma) grid on [0, 2*pi)^2.

    Returns an array of (beta, gamma, expectation) rows, beta-major, with
    grid**2 rows; all p layers share the grid point's parameter pair.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if len(received) != code.n:
        raise LengthError(f"received length {len(received)} != n = {code.n}")
    axis = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    rows = np.empty((grid * grid, 3), dtype=float)
    i = 0
    for beta in axis:
        for gamma in axis:
            sv = run_pqc(code, received, QaoaParams.uniform_params(p, beta, gamma), circuit_mode)
            rows[i] = (beta, gamma, expectation_exact(_codeword_state(sv, received), received))
            i += 1
    return rows
