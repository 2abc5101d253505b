'''Exact arithmetic in Q(q).

Laurent polynomials over the rationals, their fraction field, the q-numbers
{n} = (1 - q^n)/(1 - q) and evaluation at rational sample points.

Polynomial arithmetic (products, gcds, cancellation) is delegated to sympy's
sparse polynomial ring QQ[q]; this module only keeps the Laurent shift and the
canonical form on top of it.
'''
import math
import random
import re
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError

import sympy
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import ring

from . import util

RING, _Q = ring('q', QQ)
SYMBOL = sympy.Symbol('q')

_RENDERED = re.compile(r'^[0-9q+\-*/^() ]+$')


class QFieldException(util.QWittException):
    '''Exception raised by arithmetic in Q(q).'''


class DivisionByZero(QFieldException):
    '''Division by the zero element of Q(q).'''


class EvalPole(QFieldException):
    '''The denominator vanishes at the sample point.'''


class InadmissibleSample(QFieldException):
    '''A sample point cannot stand in for q.'''
    exit_code = 3


class ParseError(QFieldException, ValueError):
    '''Text that is not a rational function of q.'''
    exit_code = 4


def _rational(coeff):
    '''Converts a QQ coefficient into a Fraction.'''
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _ground(value):
    '''Converts an int or Fraction into a QQ coefficient.'''
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _low_degree(poly):
    '''Smallest exponent occurring in a nonzero polynomial.'''
    return min(monom[0] for monom in poly.keys())


def _shift_down(poly, power):
    '''Divides a polynomial by q^power, assuming the division is exact.'''
    if not power:
        return poly
    return RING.from_dict({(monom[0] - power,): coeff
                           for monom, coeff in poly.items()})


def _shift_up(poly, power):
    '''Multiplies a polynomial by q^power, power >= 0.'''
    if not power:
        return poly
    return poly.mul_monom((power,))


class LaurentPoly(object):
    '''A Laurent polynomial in q as a map exponent -> rational.'''

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {int(exp): Fraction(coeff)
                      for exp, coeff in (terms or {}).items() if coeff}

    @classmethod
    def from_poly(cls, poly, shift=0):
        '''Laurent polynomial q^shift * poly.'''
        return cls({monom[0] + shift: _rational(coeff)
                    for monom, coeff in poly.items()})

    def to_poly(self):
        '''Returns (poly, shift) with self = q^shift * poly.'''
        if not self.terms:
            return RING.zero, 0
        shift = min(self.terms)
        poly = RING.from_dict({(exp - shift,): _ground(coeff)
                               for exp, coeff in self.terms.items()})
        return poly, shift

    def is_zero(self):
        '''True for the zero polynomial.'''
        return not self.terms

    def render(self):
        '''Text with exponents in ascending order, e.g. `1 + q - 3/2*q^2`.'''
        if not self.terms:
            return '0'
        text = ''
        for exp in sorted(self.terms):
            term = _render_term(self.terms[exp], exp)
            if not text:
                text = term
            elif term.startswith('-'):
                text = '{} - {}'.format(text, term[1:])
            else:
                text = '{} + {}'.format(text, term)
        return text

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return 'LaurentPoly({})'.format(self.render())


def _render_term(coeff, exp):
    '''Renders one monomial coeff * q^exp.'''
    if exp == 0:
        return str(coeff)
    power = 'q' if exp == 1 else 'q^{}'.format(exp)
    if coeff == 1:
        return power
    if coeff == -1:
        return '-' + power
    return '{}*{}'.format(coeff, power)


class QRat(object):
    '''An element q^shift * num/den of Q(q) in canonical form.

    Canonical form: num and den are coprime polynomials, neither divisible by
    q, den is monic. Zero is (0, 1, 0).
    '''

    __slots__ = ('num', 'den', 'shift', '_key')

    def __init__(self, num, den=None, shift=0):
        den = RING.one if den is None else den
        if not den:
            raise DivisionByZero('division by zero in Q(q)')
        if not num:
            self.num, self.den, self.shift = RING.zero, RING.one, 0
            self._key = None
            return
        low = _low_degree(num)
        num, shift = _shift_down(num, low), shift + low
        low = _low_degree(den)
        den, shift = _shift_down(den, low), shift - low
        num, den = num.cancel(den)
        lead = den.LC
        self.num = num.quo_ground(lead)
        self.den = den.monic()
        self.shift = shift
        self._key = None

    @classmethod
    def const(cls, value):
        '''The constant rational `value`.'''
        return cls(RING.ground_new(_ground(value)))

    @classmethod
    def coerce(cls, value):
        '''QRat from a QRat, int or Fraction.'''
        if isinstance(value, QRat):
            return value
        return cls.const(value)

    @classmethod
    def from_laurent(cls, numerator, denominator=None):
        '''Builds numerator/denominator from LaurentPoly values.'''
        num, shift = numerator.to_poly()
        if denominator is None:
            return cls(num, RING.one, shift)
        den, den_shift = denominator.to_poly()
        return cls(num, den, shift - den_shift)

    @property
    def numerator(self):
        '''Numerator as a LaurentPoly (the q-power lives here).'''
        return LaurentPoly.from_poly(self.num, self.shift)

    @property
    def denominator(self):
        '''Denominator as a LaurentPoly, a true monic polynomial.'''
        return LaurentPoly.from_poly(self.den)

    def key(self):
        '''Hashable canonical key.'''
        if self._key is None:
            self._key = (self.shift,
                         tuple(sorted((m[0], _rational(c)) for m, c in self.num.items())),
                         tuple(sorted((m[0], _rational(c)) for m, c in self.den.items())))
        return self._key

    def is_constant(self):
        '''True when the value does not depend on q.'''
        return self.shift == 0 and self.num.degree() <= 0 and self.den.degree() == 0

    def __bool__(self):
        return bool(self.num)

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat.const(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        low = min(self.shift, other.shift)
        num = (_shift_up(self.num, self.shift - low) * other.den
               + _shift_up(other.num, other.shift - low) * self.den)
        return QRat(num, self.den * other.den, low)

    __radd__ = __add__

    def __neg__(self):
        result = QRat.__new__(QRat)
        result.num, result.den, result.shift = -self.num, self.den, self.shift
        result._key = None
        return result

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return ZERO
        return QRat(self.num * other.num, self.den * other.den,
                    self.shift + other.shift)

    __rmul__ = __mul__

    def inverse(self):
        '''Multiplicative inverse.'''
        if not self:
            raise DivisionByZero('0 has no inverse in Q(q)')
        return QRat(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    __div__ = __truediv__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** -exponent
        return QRat(self.num ** exponent, self.den ** exponent,
                    self.shift * exponent)

    def evaluate(self, value):
        '''Exact rational value at q = value.'''
        value = Fraction(value)
        den = _evaluate_poly(self.den, value)
        if den == 0 or (value == 0 and self.shift < 0):
            raise EvalPole('{} has a pole at q={}'.format(self.render(), value))
        return _evaluate_poly(self.num, value) * value ** self.shift / den

    def render(self):
        '''Canonical text `(num)/den`, den parenthesized when it has several terms.'''
        numerator = '({})'.format(self.numerator.render())
        denominator = self.denominator.render()
        if len(self.den) > 1:
            denominator = '({})'.format(denominator)
        return '{}/{}'.format(numerator, denominator)

    def __repr__(self):
        return 'QRat({})'.format(self.render())

    __str__ = render


def _coerce(value):
    '''Coerces operands of the arithmetic operators, None if impossible.'''
    if isinstance(value, QRat):
        return value
    if isinstance(value, (int, Fraction)):
        return QRat.const(value)
    return None


def _evaluate_poly(poly, value):
    '''Horner-free evaluation of a QQ[q] polynomial at a Fraction.'''
    return sum((_rational(coeff) * value ** monom[0]
                for monom, coeff in poly.items()), Fraction(0))


ZERO = QRat(RING.zero)
ONE = QRat(RING.one)


def add(x, y):
    '''x + y'''
    return x + y


def mul(x, y):
    '''x * y'''
    return x * y


def neg(x):
    '''-x'''
    return -x


def inv(x):
    '''1/x, DivisionByZero for x = 0.'''
    return x.inverse()


@lru_cache(maxsize=None)
def q_power(n):
    '''q^n for any integer n.'''
    return QRat(RING.one, RING.one, n)


@lru_cache(maxsize=None)
def qnum(n):
    '''The q-number {n} = (1 - q^n)/(1 - q).'''
    if n == 0:
        return ZERO
    if n > 0:
        return QRat(RING.from_dict({(k,): QQ(1) for k in range(n)}))
    return -(q_power(n) * qnum(-n))


def evaluate(x, sample):
    '''Value of x at a QSample (or plain rational).'''
    value = sample.value if isinstance(sample, QSample) else sample
    return x.evaluate(value)


def parse(text):
    '''Parses the canonical rendering (or any rational expression in q).'''
    text = text.strip()
    if not text or not _RENDERED.match(text):
        raise ParseError('not a rational function of q: "{}"'.format(text))
    try:
        expr = sympy.sympify(text.replace('^', '**'), locals={'q': SYMBOL},
                             rational=True)
        if expr.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
            raise DivisionByZero('"{}" has a zero denominator'.format(text))
        numer, denom = sympy.fraction(sympy.together(expr))
        if denom == 0:
            raise DivisionByZero('"{}" has a zero denominator'.format(text))
        return QRat(RING.from_expr(sympy.expand(numer)),
                    RING.from_expr(sympy.expand(denom)))
    except (sympy.SympifyError, SyntaxError, TokenError, TypeError, CoercionFailed) as exception:
        raise ParseError('cannot parse "{}": {}'.format(text, exception))


class QSample(object):
    '''A rational number that stands in for q.'''

    __slots__ = ('value',)

    def __init__(self, value):
        value = Fraction(value)
        if value in (0, 1, -1):
            raise InadmissibleSample('q={} is not allowed (0, 1 and -1 are excluded)'.format(value))
        self.value = value

    @classmethod
    def parse(cls, text):
        '''QSample from text like `2` or `3/2`.'''
        try:
            return cls(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError):
            raise InadmissibleSample('"{}" is not a rational number p/r'.format(text))

    def render(self):
        '''Text form p/r.'''
        return str(self.value)

    def __eq__(self, other):
        return isinstance(other, QSample) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return 'QSample({})'.format(self.value)


def admissibility_radius(window, shift=0):
    '''Largest |n| whose q-number and 1 + q^n must not vanish.'''
    return 3 * window.N + abs(shift) + 2


def is_admissible(sample, window, shift=0):
    '''True iff {n} != 0 and 1 + q^n != 0 at the sample for 0 < |n| <= radius.'''
    value = sample.value if isinstance(sample, QSample) else Fraction(sample)
    if value in (0, 1, -1):
        return False
    for n in range(1, admissibility_radius(window, shift) + 1):
        for power in (value ** n, value ** -n):
            if power == 1 or power == -1:
                return False
    return True


def sample_from_seed(seed, window, shift=0):
    '''Deterministic admissible sample p/r drawn from a seed.'''
    rng = random.Random(seed)
    while True:
        value = Fraction(rng.randint(2, 9), rng.randint(1, 7))
        if is_admissible(value, window, shift):
            return QSample(value)


class Symbolic(object):
    '''Field operations carried out exactly in Q(q).'''

    name = 'symbolic'
    zero = ZERO
    one = ONE

    def coerce(self, value):
        '''Brings a QRat/int/Fraction into this field.'''
        return QRat.coerce(value)

    def qnum(self, n):
        '''{n} in this field.'''
        return qnum(n)

    def q_power(self, n):
        '''q^n in this field.'''
        return q_power(n)

    def describe(self):
        '''Mode label used in reports.'''
        return 'symbolic'

    def primitive(self, values):
        '''Scales values to coprime polynomials (content removal).'''
        values = [v for v in values]
        nonzero = [v for v in values if v]
        if not nonzero:
            return values
        low = min(v.shift for v in nonzero)
        common = nonzero[0].den
        for value in nonzero[1:]:
            common = common.lcm(value.den)
        scaled = [_shift_up(v.num, v.shift - low) * common.exquo(v.den)
                  if v else RING.zero for v in values]
        divisor = RING.zero
        for poly in scaled:
            if poly:
                divisor = divisor.gcd(poly)
        return [QRat(poly.exquo(divisor)) if poly else ZERO for poly in scaled]

    def __eq__(self, other):
        return isinstance(other, Symbolic)

    def __hash__(self):
        return hash('symbolic')


class Sampled(object):
    '''Field operations carried out in Q after substituting q = sample.'''

    name = 'sampled'

    def __init__(self, sample):
        if not isinstance(sample, QSample):
            sample = QSample(sample)
        self.sample = sample
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self._qnums = {}

    def coerce(self, value):
        '''Evaluates a QRat at the sample, passes rationals through.'''
        if isinstance(value, QRat):
            return value.evaluate(self.sample.value)
        return Fraction(value)

    def qnum(self, n):
        '''{n} at the sample.'''
        if n not in self._qnums:
            self._qnums[n] = qnum(n).evaluate(self.sample.value)
        return self._qnums[n]

    def q_power(self, n):
        '''q^n at the sample.'''
        return self.sample.value ** n

    def describe(self):
        '''Mode label used in reports.'''
        return 'sampled(q={})'.format(self.sample.render())

    def primitive(self, values):
        '''Scales values to coprime integers.'''
        values = [Fraction(v) for v in values]
        nonzero = [v for v in values if v]
        if not nonzero:
            return values
        common = 1
        for value in nonzero:
            common = common * value.denominator // math.gcd(common, value.denominator)
        scaled = [int(v * common) for v in values]
        divisor = 0
        for number in scaled:
            divisor = math.gcd(divisor, number)
        return [Fraction(number // divisor) for number in scaled]

    def __eq__(self, other):
        return isinstance(other, Sampled) and self.sample == other.sample

    def __hash__(self):
        return hash(('sampled', self.sample.value))


SYMBOLIC = Symbolic()
