"""End-to-end hidden-subgroup solver for W_n on the statevector simulator.

A planted instance is a coset-labeling oracle for an unknown subgroup U.  The
solver recovers generators in two stages:

* base stage: superpose only the 2n x/y qubits (the swap qubit stays |0>),
  query the oracle, Hadamard again and measure.  Outcomes are F2 vectors
  orthogonal to U meet base; their kernel yields that factor exactly once
  enough outcomes accumulate.
* transform stage: superpose the full register, query the oracle, optionally
  measure the label register, apply the W_n Fourier transform to the first
  register and measure.  Each outcome lies in the dual of U or of U^swap; the
  dual of the collected samples (an F2 kernel through the relabeling) shrinks
  to U meet U^swap.

The product of the two recovered factors is U.  Every candidate generator is
checked against the oracle (one evaluation against the identity's label), so
a report marked verified is correct by construction; sampling only ever makes
candidate sets smaller, never wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qft import qft_circuit
from .f2 import kernel_basis, rref
from .simulator import Circuit, Gate, apply_gate, measure, run_circuit
from .subgroups import (
    HiddenFunction,
    build_hidden_function,
    closure_of,
    generating_set,
    perp_bruteforce,
    perp_linear,
    random_subgroup,
)
from .wreath import GroupElement, group_order


class PromiseViolationError(RuntimeError):
    """The oracle does not satisfy the promise the caller claimed for it."""


@dataclass
class SolverParams:
    n: int
    seed: int = 42
    max_rounds: int | None = None  # transform-stage sampling budget
    base_rounds: int | None = None  # base-stage sampling budget
    retain_step4_measurement: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"arity must be at least 1, got {self.n}")
        if self.max_rounds is None:
            self.max_rounds = 4 * self.n + 8
        if self.base_rounds is None:
            self.base_rounds = 2 * self.n + 8
        if self.max_rounds < 1 or self.base_rounds < 1:
            raise ValueError("round budgets must be positive")


@dataclass
class SampleRecord:
    round: int
    element: GroupElement
    coset_label: int | None = None


@dataclass
class SolveReport:
    n: int
    verified: bool
    generators: list[GroupElement]
    base_generators: list[GroupElement]
    intersection_generators: list[GroupElement]
    rounds_used: int
    transcript: list[SampleRecord]

    def to_dict(self) -> dict:
        entries = []
        for rec in self.transcript:
            entry = {"round": rec.round, "element": rec.element.literal()}
            if rec.coset_label is not None:
                entry["coset_label"] = rec.coset_label
            entries.append(entry)
        return {
            "n": self.n,
            "verified": self.verified,
            "generators": [g.literal() for g in self.generators],
            "base_generators": [g.literal() for g in self.base_generators],
            "intersection_generators": [g.literal() for g in self.intersection_generators],
            "rounds_used": self.rounds_used,
            "transcript": entries,
        }


# -- abelian sampling stages ---------------------------------------------------


@dataclass
class AbelianHspResult:
    basis: list[int]  # RREF basis of the recovered hidden subspace
    outcomes: list[int]  # raw round outcomes, all orthogonal to the subspace
    stable: bool  # True when the outcome span plainly stopped growing


def _label_bits(table: np.ndarray) -> int:
    return max(1, int(table.max()).bit_length())


def abelian_hsp(m: int, oracle, rounds: int, rng: np.random.Generator) -> AbelianHspResult:
    """Recover a hidden subspace of F2^m from a coset-labeling table.

    One round is Hadamards, oracle, Hadamards, measure; the pre-measurement
    state is round-independent and computed once.  Runs `rounds` rounds (ends
    early if the outcomes already span all of F2^m); the kernel of the outcome
    span is the answer once enough independent outcomes arrive.
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    table = np.asarray(oracle, dtype=np.int64)
    if table.shape != (1 << m,):
        raise ValueError(f"oracle table must have 2^{m} entries, got shape {table.shape}")
    out_bits = _label_bits(table)
    circuit = Circuit(m + out_bits)
    circuit.extend(Gate.h(q) for q in range(m))
    circuit.append(Gate.oracle_xor(range(m), range(m, m + out_bits), table))
    circuit.extend(Gate.h(q) for q in range(m))
    state = run_circuit(circuit)
    qubits = tuple(range(m))
    outcomes: list[int] = []
    span: list[int] = []
    last_growth = 0
    for r in range(1, rounds + 1):
        v, _ = measure(state, qubits, rng)
        outcomes.append(v)
        grown = rref(span + [v], m)
        if len(grown) > len(span):
            last_growth = r
        span = grown
        if len(span) == m:
            break
    stable = len(span) == m or (len(outcomes) - last_growth) >= max(4, m)
    return AbelianHspResult(basis=kernel_basis(span, m), outcomes=outcomes, stable=stable)


class _RestrictedStage:
    """Measurement-only sampling stage with a fixed pre-measurement state."""

    def __init__(self, state: np.ndarray, sample_qubits: tuple[int, ...], width: int):
        self._state = state
        self._qubits = sample_qubits
        self.width = width
        self.outcomes: list[int] = []

    def draw(self, rounds: int, rng: np.random.Generator, stop_at_full_rank: bool = True) -> None:
        for _ in range(rounds):
            if stop_at_full_rank and len(rref(self.outcomes, self.width)) == self.width:
                return
            v, _ = measure(self._state, self._qubits, rng)
            self.outcomes.append(v)

    def kernel(self) -> list[int]:
        return kernel_basis(self.outcomes, self.width)


def _base_stage(f: HiddenFunction) -> _RestrictedStage:
    n = f.n
    total = 2 * n + 1 + f.label_bits
    circuit = Circuit(total)
    circuit.extend(Gate.h(q) for q in range(2 * n))
    circuit.append(Gate.oracle_xor(range(2 * n + 1), range(2 * n + 1, total), f.labels))
    circuit.extend(Gate.h(q) for q in range(2 * n))
    return _RestrictedStage(run_circuit(circuit), tuple(range(2 * n)), 2 * n)


def _base_vector_to_element(n: int, v: int) -> GroupElement:
    mask = (1 << n) - 1
    return GroupElement(v & mask, v >> n, 0, n)


def _diagonal_stage(f: HiddenFunction) -> _RestrictedStage:
    # Superpose (y, a), copy y into x to land on the diagonal, query, uncopy,
    # then finish the abelian round on the (y, a) qubits.  Without the uncopy
    # the x register would stay correlated with y and wreck the interference.
    n = f.n
    total = 2 * n + 1 + f.label_bits
    circuit = Circuit(total)
    circuit.extend(Gate.h(q) for q in range(n, 2 * n + 1))
    circuit.extend(Gate.cnot(n + i, i) for i in range(n))
    circuit.append(Gate.oracle_xor(range(2 * n + 1), range(2 * n + 1, total), f.labels))
    circuit.extend(Gate.cnot(n + i, i) for i in range(n))
    circuit.extend(Gate.h(q) for q in range(n, 2 * n + 1))
    return _RestrictedStage(run_circuit(circuit), tuple(range(n, 2 * n + 1)), n + 1)


def _diagonal_vector_to_element(n: int, w: int) -> GroupElement:
    mask = (1 << n) - 1
    return GroupElement(w & mask, w & mask, w >> n, n)


def solve_base_group(f: HiddenFunction, params: SolverParams, rng: np.random.Generator | None = None) -> list[GroupElement]:
    """Generators of (U meet base) from the base-restricted abelian stage."""
    if rng is None:
        rng = np.random.default_rng(params.seed)
    stage = _base_stage(f)
    stage.draw(params.base_rounds, rng)
    return [_base_vector_to_element(f.n, v) for v in stage.kernel()]


def _verified_kernel(
    f: HiddenFunction,
    stage: _RestrictedStage,
    to_element,
    chunk: int,
    cap: int,
    rng: np.random.Generator,
) -> list[GroupElement]:
    """Sample until every kernel basis element passes the oracle check.

    The kernel can only shrink as outcomes accumulate, and a basis element
    maps into U exactly when its label matches the identity's, so the loop
    terminates at the true factor with probability one.
    """
    home = f.label_of(GroupElement.identity(f.n))
    stage.draw(chunk, rng)
    while True:
        elems = [to_element(f.n, v) for v in stage.kernel()]
        if all(f.label_of(g) == home for g in elems):
            return elems
        if len(stage.outcomes) >= cap:
            raise RuntimeError(f"sampling cap {cap} exhausted with unverified candidates")
        stage.draw(chunk, rng, stop_at_full_rank=False)


def find_involution(f: HiddenFunction, params: SolverParams, rng: np.random.Generator | None = None) -> GroupElement | None:
    """Find the order-2 generator of U, given the promise |U| <= 2.

    Any involution lies in the base part or on the diagonal, so both
    restricted stages run; None means U is trivial.  A recovered factor of
    order > 2, or conflicting nontrivial factors, betray a broken promise.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    chunk = max(params.base_rounds, 4)
    cap = 40 * chunk
    base_elems = _verified_kernel(f, _base_stage(f), _base_vector_to_element, chunk, cap, rng)
    diag_elems = _verified_kernel(f, _diagonal_stage(f), _diagonal_vector_to_element, chunk, cap, rng)
    if len(base_elems) >= 2 or len(diag_elems) >= 2:
        raise PromiseViolationError("recovered a factor of order > 2; |U| <= 2 does not hold")
    found = {g for g in base_elems + diag_elems if g != GroupElement.identity(f.n)}
    if len(found) > 1:
        raise PromiseViolationError("base and diagonal stages disagree; |U| <= 2 does not hold")
    if not found:
        return None
    out = found.pop()
    if out.order() > 2:
        raise PromiseViolationError(f"recovered element {out} has order {out.order()}")
    return out


# -- transform-stage sampling ----------------------------------------------------


class CosetSampler:
    """Draws transform-stage samples for one oracle.

    The state after superposition and oracle query is round-independent and
    prepared once; each sample optionally measures the label register, applies
    the W_n transform to the first register, and measures it.
    """

    def __init__(self, f: HiddenFunction, retain_step4_measurement: bool = True):
        n = f.n
        self.f = f
        self.retain_step4_measurement = retain_step4_measurement
        self.qubit_count = 2 * n + 1 + f.label_bits
        prep = Circuit(self.qubit_count)
        prep.extend(Gate.h(q) for q in range(2 * n + 1))
        prep.append(
            Gate.oracle_xor(range(2 * n + 1), range(2 * n + 1, self.qubit_count), f.labels)
        )
        self._prefix = run_circuit(prep)
        self._transform_gates = qft_circuit(n).circuit.gates
        self._first_register = tuple(range(2 * n + 1))
        self._label_register = tuple(range(2 * n + 1, self.qubit_count))

    def sample(self, rng: np.random.Generator) -> tuple[GroupElement, int | None]:
        state = self._prefix
        label: int | None = None
        if self.retain_step4_measurement:
            label, state = measure(state, self._label_register, rng)
        for gate in self._transform_gates:
            state = apply_gate(state, gate, self.qubit_count)
        outcome, _ = measure(state, self._first_register, rng)
        return GroupElement.from_index(self.f.n, outcome), label


def fourier_sample(
    f: HiddenFunction,
    params: SolverParams,
    rng: np.random.Generator,
    round_index: int = 1,
) -> SampleRecord:
    """One full transform-stage pass.  Builds its own sampler; when drawing
    many samples from one oracle, hold a CosetSampler instead."""
    sampler = CosetSampler(f, params.retain_step4_measurement)
    element, label = sampler.sample(rng)
    return SampleRecord(round=round_index, element=element, coset_label=label)


def _closed_under_product(elements: frozenset[GroupElement]) -> bool:
    return all(a * b in elements for a in elements for b in elements)


def solve(f: HiddenFunction, params: SolverParams) -> SolveReport:
    """Recover generators of the hidden subgroup behind `f`.

    Base stage first, then transform samples until their span stalls for
    2n+2 consecutive rounds (or the budget runs out).  The dual of the
    samples is the candidate for U meet U^swap; it must be closed under the
    product, and every reported generator must carry the identity's label.
    Any failed check resumes sampling while budget remains; a report is
    marked verified only when every check passed, and verified reports
    always generate U exactly.
    """
    n = f.n
    rng = np.random.default_rng(params.seed)
    home = f.label_of(GroupElement.identity(n))

    base_stage = _base_stage(f)
    base_stage.draw(params.base_rounds, rng)
    base_gens = [_base_vector_to_element(n, v) for v in base_stage.kernel()]
    base_set = set(base_gens)

    sampler = CosetSampler(f, params.retain_step4_measurement)
    records: list[SampleRecord] = []
    span: list[int] = []
    stagnant = 0
    window = 2 * n + 2

    def draw_window() -> None:
        nonlocal span, stagnant
        stagnant = 0
        while len(records) < params.max_rounds and stagnant < window:
            element, label = sampler.sample(rng)
            records.append(SampleRecord(round=len(records) + 1, element=element, coset_label=label))
            grown = rref(span + [element.pairing_vector()], 2 * n + 1)
            stagnant = stagnant + 1 if len(grown) == len(span) else 0
            span = grown

    draw_window()
    verified = False
    while True:
        candidate = perp_linear(n, [rec.element for rec in records])
        cand_gens = generating_set(n, candidate)
        gens = base_gens + [g for g in cand_gens if g not in base_set]
        if _closed_under_product(candidate):
            bad = [g for g in gens if f.label_of(g) != home]
            if not bad:
                verified = True
                break
            if len(records) >= params.max_rounds or any(g in base_set for g in bad):
                break
        elif len(records) >= params.max_rounds:
            break
        draw_window()

    return SolveReport(
        n=n,
        verified=verified,
        generators=gens,
        base_generators=base_gens,
        intersection_generators=cand_gens,
        rounds_used=len(records),
        transcript=records,
    )


# -- success-rate experiment -------------------------------------------------------


@dataclass
class SuccessStats:
    samples: int
    trials: int
    successes: int
    bound: float

    @property
    def empirical(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def to_dict(self) -> dict:
        return {
            "i": self.samples,
            "trials": self.trials,
            "successes": self.successes,
            "empirical": self.empirical,
            "bound": self.bound,
        }


def success_experiment(n: int, trials: int, samples_per_trial, rng: np.random.Generator):
    """Empirical rate at which i transform samples generate the joint dual.

    For each trial a random subgroup is planted; success at i means the group
    generated by the first i samples equals the group generated by the duals
    of U and U^swap (computed by exhaustive scan).  Passing a sequence of i
    values evaluates prefixes of one sample stream, so rates are monotone in i
    by construction.  Returns one SuccessStats per requested i (a bare int in,
    a bare SuccessStats out).
    """
    single = isinstance(samples_per_trial, int)
    counts = [samples_per_trial] if single else sorted(set(int(i) for i in samples_per_trial))
    if not counts or counts[0] < 0:
        raise ValueError(f"sample counts must be nonnegative, got {samples_per_trial}")
    top = counts[-1]
    checkpoints = set(counts)
    successes = dict.fromkeys(counts, 0)
    for _ in range(trials):
        u = random_subgroup(n, rng)
        f = build_hidden_function(u)
        sampler = CosetSampler(f)
        swapped = {g.conjugate_by(GroupElement.swap(n)) for g in u.closure}
        joint = perp_bruteforce(n, u.closure) | perp_bruteforce(n, swapped)
        target = closure_of(n, generating_set(n, joint))
        gens: list[GroupElement] = []
        current = closure_of(n, gens)
        if 0 in checkpoints and current == target:
            successes[0] += 1
        for i in range(1, top + 1):
            element, _ = sampler.sample(rng)
            if element not in current:
                gens.append(element)
                current = closure_of(n, gens)
            if i in checkpoints and current == target:
                successes[i] += 1
    stats = [
        SuccessStats(samples=i, trials=trials, successes=successes[i], bound=1.0 - 2.0 ** (-i / 4))
        for i in counts
    ]
    return stats[0] if single else stats
