"""Free-group word algebra.

Elements of a finitely generated free group are kept as freely reduced
words over signed integer letters: +i is the i-th generator, -i its
inverse (i >= 1).  The identity is the empty word; no placeholder letter
is ever stored.  Generator names are presentation-layer only and live in
the parsing/formatting helpers at the bottom.

Everything here is immutable and pure, so values can be shared freely
across threads.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple


class Letter(NamedTuple):
    """A single generator or inverse generator."""

    generator_index: int  # >= 1
    sign: int  # +1 or -1

    def encoded(self) -> int:
        return self.generator_index if self.sign > 0 else -self.generator_index


def _letter_key(letter: int) -> int:
    # Shortlex letter order: a < a^-1 < b < b^-1 < ...
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


class Word:
    """A freely reduced word; construct through :func:`reduce` or helpers."""

    __slots__ = ("letters",)

    def __init__(self, letters: Tuple[int, ...] = (), _checked: bool = False):
        if not _checked:
            letters = tuple(reduce(letters).letters)
        self.letters = letters

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def length(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def shortlex_key(self) -> Tuple[int, ...]:
        return (len(self.letters),) + tuple(_letter_key(x) for x in self.letters)

    def as_letters(self) -> Tuple[Letter, ...]:
        return tuple(Letter(abs(x), 1 if x > 0 else -1) for x in self.letters)

    # -- group structure -----------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return inverse(self) ** (-n)
        out = IDENTITY
        for _ in range(n):
            out = multiply(out, self)
        return out

    def conjugate_by(self, c: "Word") -> "Word":
        """c * self * c^-1."""
        return multiply(multiply(c, self), inverse(c))

    # -- hash / order ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.shortlex_key() < other.shortlex_key()

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


IDENTITY = Word((), _checked=True)


def reduce(raw: Iterable[int | Letter]) -> Word:
    """Freely reduce a letter sequence; idempotent on reduced input."""
    stack: List[int] = []
    for item in raw:
        x = item.encoded() if isinstance(item, Letter) else int(item)
        if x == 0:
            raise ValueError("letter index 0 is not a generator")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack), _checked=True)


def word(*letters: int) -> Word:
    return reduce(letters)


def multiply(u: Word, v: Word) -> Word:
    """reduce(u concatenated with v)."""
    left = list(u.letters)
    right = v.letters
    i = 0
    while left and i < len(right) and left[-1] == -right[i]:
        left.pop()
        i += 1
    return Word(tuple(left) + right[i:], _checked=True)


def multiply_all(ws: Iterable[Word]) -> Word:
    out = IDENTITY
    for w in ws:
        out = multiply(out, w)
    return out


def inverse(u: Word) -> Word:
    return Word(tuple(-x for x in reversed(u.letters)), _checked=True)


def generator(i: int) -> Word:
    if i < 1:
        raise ValueError("generator index must be >= 1")
    return Word((i,), _checked=True)


def substitute(images: Dict[int, Word], u: Word) -> Word:
    """Apply the homomorphism sending generator i to images[i]."""
    parts: List[int] = []
    for x in u.letters:
        try:
            img = images[abs(x)]
        except KeyError:
            raise KeyError(f"no image for generator {abs(x)}") from None
        parts.extend(img.letters if x > 0 else inverse(img).letters)
    return reduce(parts)


def enumerate_ball(rank: int, radius: int) -> List[Word]:
    """All reduced words of length <= radius over `rank` generators, shortlex.

    The count is 1 + sum_{k=1..radius} 2n(2n-1)^(k-1).
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    alphabet = sorted(
        [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
        key=_letter_key,
    )
    out: List[Word] = [IDENTITY]
    layer: List[Tuple[int, ...]] = [()]
    for _ in range(radius):
        nxt: List[Tuple[int, ...]] = []
        for prefix in layer:
            for x in alphabet:
                if prefix and prefix[-1] == -x:
                    continue
                nxt.append(prefix + (x,))
        layer = nxt
        out.extend(Word(t, _checked=True) for t in layer)
    return out


def ball_size(rank: int, radius: int) -> int:
    n = 2 * rank
    return 1 + sum(n * (n - 1) ** (k - 1) for k in range(1, radius + 1))


def cyclic_reduce(u: Word) -> Tuple[Word, Word]:
    """Return (core, c) with u = c * core * c^-1 and core cyclically reduced."""
    letters = u.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return (
        Word(letters[i:j], _checked=True),
        Word(letters[:i], _checked=True),
    )


def least_rotation(core: Word) -> Tuple[Word, int]:
    """Lexicographically least rotation of a cyclically reduced word.

    Returns (rotated word, rotation offset r) with rotated = core[r:]+core[:r].
    """
    letters = core.letters
    n = len(letters)
    if n == 0:
        return core, 0
    keys = tuple(_letter_key(x) for x in letters)
    best = 0
    for cand in range(1, n):
        for k in range(n):
            a = keys[(best + k) % n]
            b = keys[(cand + k) % n]
            if a != b:
                if b < a:
                    best = cand
                break
    rotated = letters[best:] + letters[:best]
    return Word(rotated, _checked=True), best


def cyclic_canonical(u: Word) -> Tuple[Word, Word]:
    """Canonical representative of the conjugacy class of u.

    Returns (canon, sigma) with u == sigma * canon * sigma^-1 exactly.
    """
    core, c = cyclic_reduce(u)
    canon, r = least_rotation(core)
    # core = prefix * canon * prefix^-1 with prefix = core[:r]
    prefix = Word(core.letters[:r], _checked=True)
    return canon, multiply(c, prefix)


# -- text syntax ------------------------------------------------------------
#
# Space-separated letters, inverses marked ^-1, identity spelled `1`:
#   "a b^-1 c"

DEFAULT_NAMES = tuple("abcdefghijklmnopqrstuvwxyz")


def default_names(rank: int) -> Tuple[str, ...]:
    if rank <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:rank]
    return tuple(f"g{i}" for i in range(1, rank + 1))


def format_word(u: Word, names: Sequence[str] = DEFAULT_NAMES) -> str:
    if u.is_identity():
        return "1"
    parts = []
    for x in u.letters:
        i = abs(x)
        if i > len(names):
            raise ValueError(f"no name for generator {i}")
        parts.append(names[i - 1] if x > 0 else f"{names[i - 1]}^-1")
    return " ".join(parts)


def parse_word(text: str, names: Sequence[str] = DEFAULT_NAMES) -> Word:
    text = text.strip()
    if text == "1" or not text:
        return IDENTITY
    index = {name: i + 1 for i, name in enumerate(names)}
    letters: List[int] = []
    for tok in text.split():
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        elif "^" in tok:
            raise ValueError(f"bad letter token {tok!r} (only ^-1 is supported)")
        else:
            name, sign = tok, 1
        if name not in index:
            raise ValueError(f"unknown generator {name!r}")
        letters.append(sign * index[name])
    return reduce(letters)


def iter_subwords(u: Word) -> Iterator[Word]:
    """Contiguous subwords of u (reduced by construction)."""
    for i in range(len(u.letters)):
        for j in range(i + 1, len(u.letters) + 1):
            yield Word(u.letters[i:j], _checked=True)
