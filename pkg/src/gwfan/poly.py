"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A polynomial is a map from exponent tuples to nonzero Python ints, together
with an ordered tuple of indeterminate names.  The zero polynomial has an
empty term map.  Values like characteristic polynomials in t, weights in y,
and rank generating functions in u, v all live in this one representation;
binary operations unify indeterminate sets by name, so Z and Z[y] and
Z[u, v] elements mix freely.

Canonical form: names sorted, no zero coefficients, exponent tuples of the
same length as the name tuple.  The string form lists terms in graded
lexicographic order with explicit signs, e.g. ``t^2 - 3*t + 2``.
"""

from __future__ import annotations

import json
import re


class ExactDivisionError(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


def _grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names=(), terms=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate indeterminate names: {names}")
        if tuple(sorted(names)) != names:
            # canonicalize the name order, permuting exponents to match
            order = sorted(range(len(names)), key=lambda i: names[i])
            remap = {old: new for new, old in enumerate(order)}
            fixed = {}
            for exp, c in (terms or {}).items():
                new_exp = [0] * len(names)
                for i, e in enumerate(exp):
                    new_exp[remap[i]] = e
                fixed[tuple(new_exp)] = c
            names = tuple(sorted(names))
            terms = fixed
        clean = {}
        for exp, c in (terms or {}).items():
            c = int(c)
            if c == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(names):
                raise ValueError(f"exponent {exp} does not match names {names}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            clean[exp] = c
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, names=()):
        names = tuple(names)
        if c == 0:
            return cls(names, {})
        return cls(names, {(0,) * len(names): int(c)})

    @classmethod
    def variable(cls, name):
        return cls((name,), {(1,): 1})

    @classmethod
    def coerce(cls, value, names=()):
        if isinstance(value, Polynomial):
            return value
        return cls.constant(int(value), names)

    # ---- ring structure ------------------------------------------------

    def _unify(self, other):
        other = Polynomial.coerce(other)
        if self.names == other.names:
            return self, other
        names = tuple(sorted(set(self.names) | set(other.names)))
        return self._embed(names), other._embed(names)

    def _embed(self, names):
        if names == self.names:
            return self
        pos = {nm: i for i, nm in enumerate(names)}
        idx = [pos[nm] for nm in self.names]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(names)
            for i, e in enumerate(exp):
                new[idx[i]] = e
            terms[tuple(new)] = c
        return Polynomial(names, terms)

    def __add__(self, other):
        a, b = self._unify(other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Polynomial(a.names, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Polynomial(self.names, {})
            return Polynomial(self.names, {e: c * other for e, c in self.terms.items()})
        a, b = self._unify(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(exp, 0) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
        return Polynomial(a.names, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            # hash is indifferent to trailing unused indeterminates so that
            # equal polynomials over different name sets collide correctly
            used = [i for i in range(len(self.names)) if any(e[i] for e in self.terms)]
            names = tuple(self.names[i] for i in used)
            items = frozenset(
                (tuple(e[i] for i in used), c) for e, c in self.terms.items()
            )
            object.__setattr__(self, "_hash", hash((names, items)))
        return self._hash

    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    # ---- substitution / evaluation ---------------------------------------

    def substitute(self, assignment):
        """Replace named indeterminates by ints or polynomials.

        Unassigned names stay symbolic.  Returns a Polynomial.
        """
        assignment = {k: Polynomial.coerce(v) for k, v in assignment.items()}
        keep = tuple(nm for nm in self.names if nm not in assignment)
        result = Polynomial.constant(0, keep)
        for exp, c in self.terms.items():
            term = Polynomial.constant(c, keep)
            for nm, e in zip(self.names, exp):
                if e == 0:
                    continue
                if nm in assignment:
                    term = term * assignment[nm] ** e
                else:
                    term = term * Polynomial((nm,), {(e,): 1})
            result = result + term
        return result

    def evaluate(self, assignment):
        """Fully evaluate; every indeterminate must be assigned an int."""
        out = self.substitute(assignment)
        if any(any(e) for e in out.terms):
            missing = [nm for nm in self.names if nm not in assignment]
            raise ValueError(f"unassigned indeterminates: {missing}")
        return out.constant_value()

    def constant_value(self):
        if not self.terms:
            return 0
        (exp, c), = self.terms.items()
        if any(exp):
            raise ValueError(f"not a constant polynomial: {self}")
        return c

    # ---- exact division -------------------------------------------------

    def exact_divide(self, divisor):
        """Quotient self / divisor over Z; raises ExactDivisionError otherwise."""
        a, b = self._unify(divisor)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_b = max(b.terms, key=_grlex_key)
        cb = b.terms[lead_b]
        rem = dict(a.terms)
        quot = {}
        while rem:
            lead = max(rem, key=_grlex_key)
            diff = tuple(x - y for x, y in zip(lead, lead_b))
            if any(d < 0 for d in diff):
                raise ExactDivisionError(
                    f"remainder {Polynomial(a.names, rem)} is nonzero"
                )
            q, r = divmod(rem[lead], cb)
            if r:
                raise ExactDivisionError(
                    f"coefficient {rem[lead]} not divisible by {cb}"
                )
            quot[diff] = q
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(diff, e2))
                s = rem.get(exp, 0) - q * c2
                if s:
                    rem[exp] = s
                else:
                    rem.pop(exp, None)
        return Polynomial(a.names, quot)

    # ---- serialization ---------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for nm, e in zip(self.names, exp):
                if e == 1:
                    factors.append(nm)
                elif e > 1:
                    factors.append(f"{nm}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"

    def to_json(self):
        return {
            "indeterminates": list(self.names),
            "terms": [
                {"exp": list(exp), "coeff": str(c)} for exp, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        names = tuple(data["indeterminates"])
        terms = {tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]}
        return cls(names, terms)

    @classmethod
    def parse(cls, text):
        """Parse the canonical string form back into a polynomial."""
        tokens = re.findall(r"[+-]|\d+|[A-Za-z_]\w*|\^|\*", text)
        if text.strip() and "".join(tokens) != re.sub(r"\s+", "", text):
            raise ValueError(f"cannot parse polynomial: {text!r}")
        result = cls.constant(0)
        i = 0
        sign = 1
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                sign = 1 if tok == "+" else -1
                i += 1
                continue
            coeff = 1
            factors = {}
            saw_body = False
            expect_factor = True
            while i < len(tokens) and tokens[i] not in "+-":
                tok = tokens[i]
                if tok == "*":
                    i += 1
                    expect_factor = True
                    continue
                if not expect_factor:
                    break
                if tok.isdigit():
                    coeff *= int(tok)
                    i += 1
                else:
                    name = tok
                    i += 1
                    power = 1
                    if i < len(tokens) and tokens[i] == "^":
                        power = int(tokens[i + 1])
                        i += 2
                    factors[name] = factors.get(name, 0) + power
                saw_body = True
                expect_factor = False
            if not saw_body:
                raise ValueError(f"cannot parse polynomial: {text!r}")
            term = cls.constant(sign * coeff)
            for nm, e in factors.items():
                term = term * cls((nm,), {(e,): 1})
            result = result + term
            sign = 1
        return result


ZERO = Polynomial()
ONE = Polynomial.constant(1)
