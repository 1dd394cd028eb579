from fractions import Fraction


class Combination:
    """Finitely supported exact linear combination of hashable keys.

    Subclasses normalise keys in :meth:`_canonical` and carry whatever
    extra context (lattice rank, module config) they need in ``_context``.
    Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            for k2, c2 in self._canonical(key, c):
                s = acc.get(k2, 0) + c2
                if s:
                    acc[k2] = s
                else:
                    acc.pop(k2, None)
        self._terms = acc

    @classmethod
    def from_clean(cls, terms):
        """Wrap a dict that is already canonical with no zero values (not copied)."""
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    def _canonical(self, key, coeff):
        yield key, coeff

    def _new(self, terms):
        # terms are already canonical
        obj = object.__new__(type(self))
        obj._terms = terms
        self._copy_context(obj)
        return obj

    def _copy_context(self, obj):
        pass

    def _check(self, other):
        pass

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key):
        return self._terms.get(key, Fraction(0))

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return self._new({})
        return self._new({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def sorted_items(self, key=None):
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else None)
