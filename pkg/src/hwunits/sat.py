"""SAT encoding of the unit equations over F_2.

Unknown coefficients ``u_s`` (s in S) and ``v_t`` (t in T) must satisfy
``sum_{ts = g} v_t u_s = [g = 1]`` for every g in T S. Products become AND
gates, each parity constraint becomes a chain of XOR blocks.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coefficients import GF2
from .group import (
    IDENTITY,
    SIGMA,
    TAU,
    GroupElement,
    ball,
    canonical_sorted,
    format_element,
    inv,
    mul,
)
from .ring import RingElement, star_theta

SOLVER_ENV = "HWUNITS_SOLVER"
BRUTE_FORCE_CAP = 24


class SpecError(ValueError):
    pass


class SolverError(RuntimeError):
    pass


class EncodingError(RuntimeError):
    """A model that does not decode to a verified unit."""


def theta_partner(s: GroupElement) -> GroupElement:
    """The element carrying the coefficient of ``s`` in ``u^{*theta}``."""
    return SIGMA(inv(s))


@dataclass(frozen=True)
class SearchSpec:
    support: tuple[GroupElement, ...]
    theta_unitary: bool = False
    tau_symmetric: bool = False
    exclude_trivial: bool = False
    radius: int | None = None
    companion: tuple[GroupElement, ...] | None = None

    def __post_init__(self):
        if not self.support:
            raise SpecError("the support S must be nonempty")
        object.__setattr__(self, "support", tuple(canonical_sorted(set(self.support))))
        if self.companion is not None:
            if self.theta_unitary:
                raise SpecError("the companion support is implied by theta_unitary")
            object.__setattr__(self, "companion", tuple(canonical_sorted(set(self.companion))))

    @classmethod
    def from_radius(cls, r: int, **flags) -> SearchSpec:
        """S = ball(r); with tau symmetry, its largest tau-stable subset."""
        elements = ball(r)
        if flags.get("tau_symmetric"):
            members = set(elements)
            elements = [g for g in elements if TAU(g) in members]
        return cls(tuple(elements), radius=r, **flags)

    @property
    def companion_support(self) -> tuple[GroupElement, ...]:
        if self.theta_unitary:
            return tuple(canonical_sorted({theta_partner(s) for s in self.support}))
        if self.companion is not None:
            return self.companion
        return tuple(canonical_sorted({inv(s) for s in self.support}))


@dataclass
class UnitSystem:
    """Parity constraints over products of u- and v-variables.

    Variables are numbered from 1: u-classes first, then (without theta
    unitarity) v-classes, each in canonical element order.
    """

    spec: SearchSpec
    u_var: dict[GroupElement, int]
    v_var: dict[GroupElement, int]
    num_unknowns: int
    # (g, target, monomials); a monomial is a sorted pair of variables, or a
    # singleton when both factors are the same variable
    constraints: list[tuple[GroupElement, int, list[tuple[int, ...]]]]
    product_count: int

    @property
    def names(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for g, n in self.u_var.items():
            out.setdefault(n, f"u[{format_element(g)}]")
        if not self.spec.theta_unitary:
            for g, n in self.v_var.items():
                out.setdefault(n, f"v[{format_element(g)}]")
        return out

    def evaluate(self, bits: Sequence[bool]) -> bool:
        """Check an assignment (bits[0] is variable 1) against every constraint."""
        for _, target, monos in self.constraints:
            parity = 0
            for m in monos:
                parity ^= all(bits[n - 1] for n in m)
            if parity != target:
                return False
        return True


def _orbit_classes(elements: Sequence[GroupElement], tau_symmetric: bool, start: int) -> dict[GroupElement, int]:
    index: dict[GroupElement, int] = {}
    members = set(elements)
    nxt = start
    for g in elements:
        if g in index:
            continue
        index[g] = nxt
        if tau_symmetric:
            h = TAU(g)
            if h not in members:
                raise SpecError(f"tau does not stabilize the support: {format_element(g)} -> {format_element(h)}")
            index[h] = nxt
        nxt += 1
    return index


def build_system(spec: SearchSpec) -> UnitSystem:
    S = spec.support
    if spec.tau_symmetric:
        members = set(S)
        offending = [g for g in S if TAU(g) not in members]
        if offending:
            raise SpecError(
                "tau does not stabilize the support; offending elements: "
                + ", ".join(format_element(g) for g in offending)
            )
    u_var = _orbit_classes(S, spec.tau_symmetric, 1)
    n_u = max(u_var.values())
    T = spec.companion_support
    if spec.theta_unitary:
        # over F_2 the coefficient of u^{*theta} at theta_partner(s) is u_s
        v_var = {theta_partner(s): u_var[s] for s in S}
        n = n_u
    else:
        v_var = {t: n_u + k + 1 for k, t in enumerate(T)}
        n = n_u + len(T)

    # the identity row is needed even when 1 is not in T S
    buckets: dict[GroupElement, dict[tuple[int, ...], int]] = {IDENTITY: {}}
    for t in T:
        vt = v_var[t]
        for s in S:
            g = mul(t, s)
            us = u_var[s]
            mono = (us,) if us == vt else tuple(sorted((us, vt)))
            bucket = buckets.setdefault(g, {})
            bucket[mono] = bucket.get(mono, 0) ^ 1
    constraints = []
    for g in canonical_sorted(buckets):
        monos = [m for m, odd in buckets[g].items() if odd]
        constraints.append((g, int(g == IDENTITY), sorted(monos)))
    return UnitSystem(spec, u_var, v_var, n, constraints, len(S) * len(T))


# ---------------------------------------------------------------------------
# CNF


@dataclass
class CnfInstance:
    num_vars: int
    clauses: list[list[int]]
    var_map: dict[str, int] = field(default_factory=dict)
    num_unknowns: int = 0

    def __post_init__(self):
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in c):
                raise ValueError(f"literal out of range in {c}")


class _Builder:
    def __init__(self, n: int):
        self.top = n
        self.clauses: list[list[int]] = []
        self.ands: dict[tuple[int, int], int] = {}
        self.names: dict[str, int] = {}

    def new(self, name: str | None = None) -> int:
        self.top += 1
        if name:
            self.names[name] = self.top
        return self.top

    def and_gate(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self.ands:
            w = self.new(f"w[{a},{b}]")
            self.clauses += [[-w, a], [-w, b], [w, -a, -b]]
            self.ands[key] = w
        return self.ands[key]

    def contradiction(self) -> None:
        f = self.new("false")
        self.clauses += [[f], [-f]]

    def parity(self, lits: Sequence[int], target: int) -> None:
        if not lits:
            if target:
                self.contradiction()
            return
        acc = lits[0]
        for lit in lits[1:]:
            o = self.new()
            self.clauses += [[-o, acc, lit], [-o, -acc, -lit], [o, -acc, lit], [o, acc, -lit]]
            acc = o
        self.clauses.append([acc] if target else [-acc])

    def at_least_two(self, lits: Sequence[int]) -> None:
        """Sequential counter; ``s1[i]``/``s2[i]``: at least one/two among the first i."""
        if len(lits) < 2:
            self.contradiction()
            return
        s1 = self.new("card.s1[1]")
        self.clauses.append([-s1, lits[0]])
        s2 = None
        for i, x in enumerate(lits[1:], start=2):
            n1 = self.new(f"card.s1[{i}]")
            n2 = self.new(f"card.s2[{i}]")
            self.clauses += [[-n1, s1, x]]
            if s2 is None:
                self.clauses += [[-n2, s1], [-n2, x]]
            else:
                self.clauses += [[-n2, s2, s1], [-n2, s2, x]]
            s1, s2 = n1, n2
        self.clauses.append([s2])


def encode_cnf(system: UnitSystem) -> CnfInstance:
    b = _Builder(system.num_unknowns)
    for _, target, monos in system.constraints:
        lits = [m[0] if len(m) == 1 else b.and_gate(*m) for m in monos]
        b.parity(lits, target)
    if system.spec.exclude_trivial:
        # one literal per support element, so tau-orbits count with multiplicity
        b.at_least_two([system.u_var[s] for s in system.spec.support])
    var_map = {name: n for n, name in system.names.items()}
    var_map.update(b.names)
    return CnfInstance(b.top, b.clauses, var_map, system.num_unknowns)


def write_dimacs(cnf: CnfInstance, comments: bool = True) -> str:
    lines = []
    if comments:
        for name, n in sorted(cnf.var_map.items(), key=lambda kv: kv[1]):
            if n <= cnf.num_unknowns:
                lines.append(f"c var {n} {name}")
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in cnf.clauses)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    header = None
    clauses: list[list[int]] = []
    var_map: dict[str, int] = {}
    pending: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            parts = line.split(None, 3)
            if len(parts) == 4 and parts[1] == "var":
                var_map[parts[3]] = int(parts[2])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ValueError("missing DIMACS header")
    if pending:
        raise ValueError("unterminated clause")
    if len(clauses) != header[1]:
        raise ValueError(f"header announces {header[1]} clauses, found {len(clauses)}")
    unknowns = max(var_map.values(), default=0)
    return CnfInstance(header[0], clauses, var_map, unknowns)


# ---------------------------------------------------------------------------
# solving


@dataclass
class SolverResult:
    status: str  # "SAT", "UNSAT" or "UNKNOWN"
    assignment: dict[int, bool] = field(default_factory=dict)

    @property
    def satisfiable(self) -> bool | None:
        return {"SAT": True, "UNSAT": False}.get(self.status)


_VERDICTS = {"SATISFIABLE": "SAT", "UNSATISFIABLE": "UNSAT", "UNKNOWN": "UNKNOWN"}


def parse_model(text: str) -> SolverResult:
    """Read SAT-competition output: an ``s`` verdict line and ``v`` literal lines."""
    status = None
    assignment: dict[int, bool] = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            word = line[2:].strip()
            if word not in _VERDICTS:
                raise SolverError(f"unrecognised verdict {word!r}")
            status = _VERDICTS[word]
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    raise SolverError(f"malformed literal {tok!r}") from None
                if lit:
                    assignment[abs(lit)] = lit > 0
    if status is None:
        raise SolverError("solver output has no verdict line")
    if status == "SAT" and not assignment:
        raise SolverError("SAT verdict without a model")
    return SolverResult(status, assignment)


def solve_inprocess(cnf: CnfInstance, name: str = "cadical153") -> SolverResult:
    from pysat.solvers import Solver

    with Solver(name=name, bootstrap_with=cnf.clauses) as s:
        if not s.solve():
            return SolverResult("UNSAT")
        return SolverResult("SAT", {abs(l): l > 0 for l in s.get_model()})


def solve_external(cnf: CnfInstance, command: str, cnf_path: str | None = None, timeout: float | None = None) -> SolverResult:
    """Run ``command`` (a template with ``{cnf}``) and parse its output."""
    if "{cnf}" not in command:
        raise SolverError("solver command template needs a {cnf} placeholder")
    own_file = cnf_path is None
    if own_file:
        fd, cnf_path = tempfile.mkstemp(suffix=".cnf")
        os.close(fd)
    try:
        with open(cnf_path, "w") as fh:
            fh.write(write_dimacs(cnf))
        argv = [part.replace("{cnf}", cnf_path) for part in shlex.split(command)]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise SolverError(f"could not run solver: {exc}") from exc
        if proc.returncode not in (0, 10, 20):
            raise SolverError(f"solver exited with {proc.returncode}: {proc.stderr.strip()[:500]}")
        return parse_model(proc.stdout)
    finally:
        if own_file:
            os.unlink(cnf_path)


def default_solver_command() -> str | None:
    return os.environ.get(SOLVER_ENV) or None


# ---------------------------------------------------------------------------
# decoding and brute force


def decode_unit(assignment: dict[int, bool] | Sequence[bool], spec: SearchSpec, system: UnitSystem | None = None) -> tuple[RingElement, RingElement]:
    """Return ``(u, v)`` read from a model; ``v`` is the companion (``u^{*theta}`` in theta mode)."""
    system = system or build_system(spec)
    if not isinstance(assignment, dict):
        assignment = {n + 1: bool(b) for n, b in enumerate(assignment)}
    missing = [n for n in range(1, system.num_unknowns + 1) if n not in assignment]
    if missing:
        raise SpecError(f"assignment lacks variables {missing[:10]}")
    u = RingElement({s: 1 for s, n in system.u_var.items() if assignment[n]}, GF2)
    if spec.theta_unitary:
        v = star_theta(u)
    else:
        v = RingElement({t: 1 for t, n in system.v_var.items() if assignment[n]}, GF2)
    return u, v


def verify_decoded(u: RingElement, v: RingElement) -> bool:
    one = RingElement.one(GF2)
    return v * u == one and u * v == one


def brute_force(spec: SearchSpec, cap: int = BRUTE_FORCE_CAP, system: UnitSystem | None = None) -> RingElement | None:
    """First solution in counting order (variable 1 is the lowest bit), or None."""
    system = system or build_system(spec)
    bits = _first_model(system, cap)
    return None if bits is None else decode_unit(bits, spec, system)[0]


def _first_model(system: UnitSystem, cap: int) -> list[bool] | None:
    spec = system.spec
    n = system.num_unknowns
    if n > cap:
        raise SpecError(f"{n} unknowns exceed the brute-force cap {cap}")
    multiplicity = np.zeros(n, dtype=np.int64)
    for s in spec.support:
        multiplicity[system.u_var[s] - 1] += 1
    u_cols = sorted(set(system.u_var.values()))
    chunk = 1 << min(n, 16)
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(bool)
        alive = np.ones(len(idx), dtype=bool)
        if spec.exclude_trivial:
            counts = bits[:, [c - 1 for c in u_cols]].astype(np.int64) @ multiplicity[[c - 1 for c in u_cols]]
            alive &= counts >= 2
        for _, target, monos in system.constraints:
            rows = np.flatnonzero(alive)
            if not len(rows):
                break
            sub = bits[rows]
            parity = np.zeros(len(rows), dtype=bool)
            for m in monos:
                term = sub[:, m[0] - 1]
                if len(m) == 2:
                    term = term & sub[:, m[1] - 1]
                parity ^= term
            alive[rows[parity != bool(target)]] = False
        hits = np.flatnonzero(alive)
        if len(hits):
            return [bool(b) for b in bits[hits[0]]]
    return None


@dataclass
class SearchResult:
    status: str
    method: str
    unknowns: int
    cnf_vars: int
    cnf_clauses: int
    unit: RingElement | None = None
    companion: RingElement | None = None


def search(
    spec: SearchSpec,
    solver: str | None = None,
    cnf_path: str | None = None,
    cap: int = BRUTE_FORCE_CAP,
    timeout: float | None = None,
) -> SearchResult:
    """Encode, solve and re-verify.

    ``solver`` is ``None`` (brute force under the cap, else the in-process
    solver), ``"pysat"`` / ``"pysat:<name>"``, or an external command template.
    """
    system = build_system(spec)
    cnf = encode_cnf(system)
    if cnf_path and (solver is None or solver.startswith("pysat")):
        with open(cnf_path, "w") as fh:
            fh.write(write_dimacs(cnf))
    base = dict(unknowns=system.num_unknowns, cnf_vars=cnf.num_vars, cnf_clauses=len(cnf.clauses))

    if solver is None and system.num_unknowns <= cap:
        bits = _first_model(system, cap)
        if bits is None:
            return SearchResult("UNSAT", "brute-force", **base)
        u, v = decode_unit(bits, spec, system)
        return _checked("SAT", "brute-force", base, u, v)

    if solver is None or solver.startswith("pysat"):
        name = solver.split(":", 1)[1] if solver and ":" in solver else "cadical153"
        result, method = solve_inprocess(cnf, name), f"pysat:{name}"
    else:
        result, method = solve_external(cnf, solver, cnf_path, timeout), "external"
    if result.status != "SAT":
        return SearchResult(result.status, method, **base)
    u, v = decode_unit(result.assignment, spec, system)
    return _checked("SAT", method, base, u, v)


def _checked(status: str, method: str, base: dict, u: RingElement, v: RingElement) -> SearchResult:
    if not verify_decoded(u, v):
        raise EncodingError(f"decoded pair fails v*u = u*v = 1 ({method})")
    return SearchResult(status, method, unit=u, companion=v, **base)


def support_from_lines(lines: Iterable[str]) -> list[GroupElement]:
    from .group import parse_element

    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            if "*" in line:
                line = line.split("*", 1)[1]
            out.append(parse_element(line))
    return out
