"""Syndrome trellis construction and the classical minimum-path-metric decoder.

This is the exact classical reference that every variational decode is checked
against. Ties are never broken: the decoder returns all codewords attaining
the minimum metric.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import BitVector, Code, hamming_distance
from .errors import LengthError, TrellisError


@dataclass(frozen=True)
class Branch:
    time: int
    from_state: int
    bits: tuple[int, ...]
    to_state: int


@dataclass(frozen=True)
class Trellis:
    """Layered graph whose root-to-sink paths spell exactly the codewords.

    ``node_layers`` has one entry per time point (num_instants + 1 layers);
    ``branch_layers[t]`` holds the surviving branches of instant ``t``. State
    labels are integers; the first and last layers contain only state 0.
    """

    code: Code
    branch_bits: int
    node_layers: tuple[tuple[int, ...], ...]
    branch_layers: tuple[tuple[Branch, ...], ...]

    @property
    def num_instants(self) -> int:
        return len(self.branch_layers)

    @property
    def depth(self) -> int:
        return len(self.node_layers)

    def path_count(self) -> int:
        """Number of root-to-sink paths, by forward dynamic programming."""
        counts = {0: 1}
        for branches in self.branch_layers:
            nxt: dict[int, int] = {}
            for br in branches:
                if br.from_state in counts:
                    nxt[br.to_state] = nxt.get(br.to_state, 0) + counts[br.from_state]
            counts = nxt
        return counts.get(0, 0)


@dataclass(frozen=True)
class DecodeResult:
    best_metric: int
    best_codewords: tuple[BitVector, ...]
    per_codeword_metric: dict[BitVector, int]


def _syndrome_trellis(code: Code) -> Trellis:
    # State after t bits is the partial syndrome sum of c_i * h_i; valid paths
    # start and end in the all-zero state.
    h = code.parity_check.to_array()
    n = code.n
    width = h.shape[0]
    col_ints = [BitVector(tuple(int(b) for b in h[:, t])).to_index() if width else 0 for t in range(n)]

    forward = [{0}]
    all_branches: list[list[Branch]] = []
    for t in range(n):
        layer = []
        nxt = set()
        for s in forward[t]:
            for bit in (0, 1):
                to = s ^ (col_ints[t] if bit else 0)
                layer.append(Branch(t, s, (bit,), to))
                nxt.add(to)
        all_branches.append(layer)
        forward.append(nxt)

    # Backward prune: drop branches that cannot reach the final null state.
    backward = [set() for _ in range(n + 1)]
    backward[n] = {0}
    for t in range(n - 1, -1, -1):
        backward[t] = {br.from_state for br in all_branches[t] if br.to_state in backward[t + 1]}

    node_layers = tuple(tuple(sorted(forward[t] & backward[t])) for t in range(n + 1))
    branch_layers = tuple(
        tuple(br for br in all_branches[t] if br.from_state in backward[t] and br.to_state in backward[t + 1])
        for t in range(n)
    )
    return Trellis(code, 1, node_layers, branch_layers)


def _prefix_trellis(code: Code) -> Trellis:
    # Merge prefixes with identical suffix sets; every root-to-sink path of the
    # merged graph is then exactly one codeword.
    b = code.branch_bits
    n = code.n
    num_instants = n // b
    words = [w.bits for w in code.codespace]

    state_maps: list[dict[tuple[int, ...], int]] = []
    for t in range(num_instants + 1):
        cut = t * b
        suffixes: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for w in words:
            suffixes.setdefault(w[:cut], set()).add(w[cut:])
        class_ids: dict[frozenset, int] = {}
        prefix_state: dict[tuple[int, ...], int] = {}
        for prefix in sorted(suffixes):
            key = frozenset(suffixes[prefix])
            if key not in class_ids:
                class_ids[key] = len(class_ids)
            prefix_state[prefix] = class_ids[key]
        state_maps.append(prefix_state)

    branch_layers = []
    for t in range(num_instants):
        seen = set()
        layer = []
        for w in words:
            frm = state_maps[t][w[: t * b]]
            to = state_maps[t + 1][w[: (t + 1) * b]]
            label = w[t * b : (t + 1) * b]
            key = (frm, label, to)
            if key not in seen:
                seen.add(key)
                layer.append(Branch(t, frm, label, to))
        branch_layers.append(tuple(layer))

    node_layers = tuple(tuple(sorted(set(m.values()))) for m in state_maps)
    return Trellis(code, b, node_layers, tuple(branch_layers))


def build_trellis(code: Code) -> Trellis:
    """Build the trellis of ``code``.

    Block codes with a parity-check matrix get the syndrome trellis; otherwise
    a path-merged prefix trellis is built from the explicit codeword list.
    """
    if code.parity_check is not None and code.branch_bits == 1:
        return _syndrome_trellis(code)
    if code.codespace:
        return _prefix_trellis(code)
    raise TrellisError("code has neither parity-check data nor an enumerated codespace")


def viterbi_decode(trellis: Trellis, received: BitVector) -> DecodeResult:
    """Minimum-path-metric decoding over the trellis, keeping all ties."""
    code = trellis.code
    if len(received) != code.n:
        raise LengthError(f"received length {len(received)} != n = {code.n}")
    b = trellis.branch_bits
    chunks = [received.bits[t * b : (t + 1) * b] for t in range(trellis.num_instants)]

    dist: dict[int, int] = {0: 0}
    preds: list[dict[int, list[Branch]]] = []
    for t, branches in enumerate(trellis.branch_layers):
        ndist: dict[int, int] = {}
        npred: dict[int, list[Branch]] = {}
        for br in branches:
            if br.from_state not in dist:
                continue
            metric = dist[br.from_state] + sum(x != y for x, y in zip(br.bits, chunks[t]))
            if br.to_state not in ndist or metric < ndist[br.to_state]:
                ndist[br.to_state] = metric
                npred[br.to_state] = [br]
            elif metric == ndist[br.to_state]:
                npred[br.to_state].append(br)
        dist = ndist
        preds.append(npred)

    best_metric = dist[0]
    paths: list[tuple[int, ...]] = []

    def backtrack(t: int, state: int, suffix: tuple[int, ...]):
        if t == 0:
            paths.append(suffix)
            return
        for br in preds[t - 1][state]:
            backtrack(t - 1, br.from_state, br.bits + suffix)

    backtrack(trellis.num_instants, 0, ())
    best = tuple(sorted(BitVector(p) for p in paths))
    per_codeword = {c: hamming_distance(c, received) for c in code.codespace}
    return DecodeResult(best_metric, best, per_codeword)


def ml_brute_force(code: Code, received: BitVector) -> DecodeResult:
    """Exhaustive distance scan over the codespace; independent of the trellis."""
    if len(received) != code.n:
        raise LengthError(f"received length {len(received)} != n = {code.n}")
    per_codeword = {c: hamming_distance(c, received) for c in code.codespace}
    best_metric = min(per_codeword.values())
    best = tuple(sorted(c for c, m in per_codeword.items() if m == best_metric))
    return DecodeResult(best_metric, best, per_codeword)
