"""The c, d, r, i, l, b, Delta and Gamma series attached to (n, q).

Every sequence is stored as a dict keyed by its natural index so that
formulas keep their natural 1-based subscripts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .contfrac import CaseTag, GroupParams
from .errors import ConsistencyError
from .report import CheckReport


@dataclass(frozen=True)
class SeriesTable:
    n: int
    q: int
    nu: int
    N: int
    e: int
    c: dict[int, int]
    d: dict[int, int]
    r: dict[int, int]
    i: dict[int, int]
    l: dict[int, int]
    b: dict[int, int]
    Delta: dict[int, int]
    Gamma: dict[int, int]

    @property
    def S(self) -> int:
        """Total excess sum(alpha_p - 2) = l_N - 2."""
        return self.l[self.N] - 2

    def as_rows(self) -> list[tuple[str, dict[int, int]]]:
        return [
            ("c", self.c),
            ("d", self.d),
            ("r", self.r),
            ("i", self.i),
            ("l", self.l),
            ("b", self.b),
            ("Delta", self.Delta),
            ("Gamma", self.Gamma),
        ]


def compute_series(params: GroupParams) -> SeriesTable:
    params.require_in_scope()
    n, q, m, nu = params.n, params.q, params.m, params.nu
    alphas = params.jh.alphas
    N, e = params.N, params.e
    a = params.dual.a

    def linear(first: dict[int, int]) -> dict[int, int]:
        seq = {k: v for k, v in first.items() if k <= e}
        for j in range(5, e + 1):
            seq[j] = a(j - 1) * seq[j - 1] - seq[j - 2]
        return seq

    c = linear({2: 1, 3: 0, 4: 1})
    d = linear({2: 0, 3: 1} | ({4: a(3) - 1} if e >= 4 else {}))
    r2 = a(2) * m - q
    r3 = r2 - m
    r = linear({2: r2, 3: r3} | ({4: (a(3) + 1) * r3 - r2} if e >= 4 else {}))

    i = {0: n, 1: q}
    for t in range(2, N + 2):
        i[t] = alphas[t - 2] * i[t - 1] - i[t - 2]

    l = {}
    acc = 0
    for j in range(1, N + 1):
        acc += alphas[j - 1] - 2
        l[j] = 2 + acc

    lN = l[N]
    if e - 1 != lN:
        raise ConsistencyError(f"D({n},{q}): expected e-1 = l_N, got e={e}, l_N={lN}")

    prefix = [0]
    for alpha in alphas:
        prefix.append(prefix[-1] + alpha - 2)
    b = {0: 1}
    for t in range(1, lN - 1):
        b[t] = next(k for k in range(1, N + 1) if t <= prefix[k])
    b[lN - 1] = N

    Delta, Gamma = {}, {}
    for k in range(nu + 1, N + 2):
        Delta[k] = 1 + sum(c[l[t]] for t in range(nu + 1, k))
        Gamma[k] = sum(d[l[t]] for t in range(nu + 1, k))

    return SeriesTable(n, q, nu, N, e, c, d, r, i, l, b, Delta, Gamma)


def check_series_identities(table: SeriesTable) -> CheckReport:
    rep = CheckReport(f"series identities D({table.n},{table.q})")
    c, d, r, i, b = table.c, table.d, table.r, table.i, table.b
    for t in range(2, table.e - 1):
        bt = b[t]
        lhs, rhs = r[t + 1], r[t + 2] + i[bt]
        rep.add(f"r_{t + 1} = r_{t + 2} + i_b_{t}", lhs == rhs, f"{lhs} vs {rhs}")
        lhs, rhs = c[t + 2], c[t + 1] + table.Delta[bt]
        rep.add(f"c_{t + 2} = c_{t + 1} + Delta_b_{t}", lhs == rhs, f"{lhs} vs {rhs}")
        lhs, rhs = d[t + 2], d[t + 1] + table.Gamma[bt]
        rep.add(f"d_{t + 2} = d_{t + 1} + Gamma_b_{t}", lhs == rhs, f"{lhs} vs {rhs}")
    for t in range(table.nu + 1, table.N + 1):
        lhs, rhs = r[table.l[t]], i[t] - i[t + 1]
        rep.add(f"r_l_{t} = i_{t} - i_{t + 1}", lhs == rhs, f"{lhs} vs {rhs}")
    if table.nu == table.N - 1:
        for t in range(3, table.e + 1):
            rep.add(f"c_{t} = {t} - 3", c[t] == t - 3, f"{c[t]} vs {t - 3}")
            rep.add(f"d_{t} = 1", d[t] == 1, f"{d[t]} vs 1")
    return rep


def r_nonnegative(table: SeriesTable) -> list[int]:
    """Indices j with r_j < 0 (observational; not a claimed identity)."""
    return [j for j, v in sorted(table.r.items()) if v < 0]


def case_of(table: SeriesTable) -> CaseTag:
    return CaseTag.CASE_B if table.nu == table.N - 1 else CaseTag.CASE_A
