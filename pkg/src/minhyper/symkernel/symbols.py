"""The fixed 11-symbol alphabet of the engine.

Order (most significant first): l1 > l2 > l3 > D1 > D2 > D3 > D4 >
T123 > T124 > T134 > T234.  ``l4`` is never a symbol: it is eliminated
through the trace condition before anything reaches the kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

LAMBDA = "Lambda"
DERIV = "D"
TRIPLE = "T"


@dataclass(frozen=True)
class Symbol:
    kind: str
    index: tuple[int, ...]

    def __post_init__(self):
        if (self.kind, self.index) not in _POSITION_BY_KEY:
            raise ValueError(f"no such symbol: {self.kind}{self.index}")

    @classmethod
    def lam(cls, i: int) -> Symbol:
        return cls(LAMBDA, (i,))

    @classmethod
    def d(cls, m: int) -> Symbol:
        return cls(DERIV, (m,))

    @classmethod
    def t(cls, i: int, j: int, k: int) -> Symbol:
        return cls(TRIPLE, (i, j, k))

    @classmethod
    def from_name(cls, name: str) -> Symbol:
        try:
            return SYMBOLS[_POSITION_BY_NAME[name]]
        except KeyError:
            raise ValueError(f"unknown symbol name {name!r}") from None

    @property
    def position(self) -> int:
        """Index in the total order; 0 is the most significant symbol."""
        return _POSITION_BY_KEY[(self.kind, self.index)]

    @property
    def name(self) -> str:
        digits = "".join(str(i) for i in self.index)
        return ("l" if self.kind == LAMBDA else self.kind) + digits

    @property
    def latex(self) -> str:
        if self.kind == LAMBDA:
            return rf"\lambda_{self.index[0]}"
        if self.kind == DERIV:
            return f"h_{{44,{self.index[0]}}}"
        i, j, k = self.index
        return f"h_{{{i}{j},{k}}}"

    def __repr__(self) -> str:
        return self.name

    def __lt__(self, other: Symbol) -> bool:
        # "smaller" means later in the order, so sorted() lists l1 last
        return self.position > other.position


_KEYS = (
    [(LAMBDA, (i,)) for i in (1, 2, 3)]
    + [(DERIV, (m,)) for m in (1, 2, 3, 4)]
    + [(TRIPLE, t) for t in combinations((1, 2, 3, 4), 3)]
)
_POSITION_BY_KEY = {key: pos for pos, key in enumerate(_KEYS)}
SYMBOLS: tuple[Symbol, ...] = tuple(Symbol(kind, index) for kind, index in _KEYS)
_POSITION_BY_NAME = {s.name: s.position for s in SYMBOLS}
NVARS = len(SYMBOLS)

LAMBDA_SYMBOLS = SYMBOLS[:3]
D_SYMBOLS = SYMBOLS[3:7]
T_SYMBOLS = SYMBOLS[7:]
DERIVATIVE_SYMBOLS = SYMBOLS[3:]
