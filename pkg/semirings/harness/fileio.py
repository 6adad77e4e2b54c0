"""
Line-oriented text format for algebras, maps, S-algebras and diagrams.

    semiring NAME            hom SRC -> DST         base naturals|FILE
    order N                  0 -> 0                 <algebra block>
    add                      1 -> 1                 <optional hom block>
    <N rows>                 ...
    mul                                             object FILE
    <N rows>                                        arrow I J MAPFILE

`#` starts a comment. FILE may also be the name of a built-in algebra.
"""

from pathlib import Path
from typing import List, NamedTuple, Optional, Union

from ..colimits.diagrams import Diagram, DiagramArrow
from ..core.semiring import FiniteSemiring, Homomorphism, validate_hom, validate_semiring
from ..errors import AlgebraSyntaxError, AlgebraValidationError, SemiringValidationError, TableShapeError
from ..salgebra.builtins import FIXTURES
from ..salgebra.coreflection import NATURALS, BaseSemiring, SAlgebra, validate_salgebra


class Line(NamedTuple):
    number: int
    words: List[str]
    text: str


def _lines(text: str) -> List[Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if content.strip():
            lines.append(Line(number, content.split(), content))
    return lines


def _column(line: Line, word_index: int) -> int:
    """1-based column of the word at word_index."""
    pos = 0
    for k, word in enumerate(line.words):
        pos = line.text.index(word, pos)
        if k == word_index:
            return pos + 1
        pos += len(word)
    return len(line.text.rstrip()) + 1


class _Reader:
    def __init__(self, text: str, source: Optional[str]):
        self.lines = _lines(text)
        self.source = source
        self.i = 0

    def error(self, message: str, line: Optional[Line] = None, word: int = 0) -> AlgebraSyntaxError:
        if line is None:
            last = self.lines[-1].number if self.lines else 0
            return AlgebraSyntaxError(message, last + 1, 1, self.source)
        return AlgebraSyntaxError(message, line.number, _column(line, word), self.source)

    @property
    def done(self) -> bool:
        return self.i >= len(self.lines)

    def peek(self) -> Optional[Line]:
        return None if self.done else self.lines[self.i]

    def next(self, what: str) -> Line:
        if self.done:
            raise self.error(f"unexpected end of file, expected {what}")
        line = self.lines[self.i]
        self.i += 1
        return line

    def keyword(self, word: str, arity: int) -> Line:
        line = self.next(f"'{word}'")
        if line.words[0] != word:
            raise self.error(f"expected '{word}', found '{line.words[0]}'", line)
        if len(line.words) != arity + 1:
            raise self.error(f"'{word}' takes {arity} argument(s)", line, min(len(line.words), arity + 1) - 1)
        return line

    def integer(self, line: Line, word: int) -> int:
        try:
            return int(line.words[word])
        except ValueError:
            raise self.error(f"expected an integer, found '{line.words[word]}'", line, word) from None

    def table(self, label: str, order: int) -> List[List[int]]:
        self.keyword(label, 0)
        rows = []
        for r in range(order):
            line = self.next(f"row {r} of the {label} table")
            if not line.words[0].lstrip("-").isdigit():
                raise self.error(f"{label} table has {r} rows, expected {order}", line)
            if len(line.words) != order:
                raise self.error(f"{label} row {r} has {len(line.words)} entries, expected {order}",
                                 line, min(len(line.words), order) - 1)
            rows.append([self.integer(line, k) for k in range(order)])
        return rows


def _read_algebra(reader: _Reader) -> FiniteSemiring:
    name = reader.keyword("semiring", 1).words[1]
    order_line = reader.keyword("order", 1)
    order = reader.integer(order_line, 1)
    if order < 1:
        raise reader.error("order must be positive", order_line, 1)
    add = reader.table("add", order)
    mul = reader.table("mul", order)
    try:
        return validate_semiring(order, add, mul, name)
    except TableShapeError as e:
        raise reader.error(str(e), order_line) from e
    except SemiringValidationError as e:
        raise AlgebraValidationError(e, reader.source) from e


def _read_map(reader: _Reader, source: FiniteSemiring, target: FiniteSemiring) -> Homomorphism:
    header = reader.next("'hom SRC -> DST'")
    if header.words[0] != "hom" or len(header.words) != 4 or header.words[2] != "->":
        raise reader.error("expected 'hom SRC -> DST'", header)
    for word, algebra in ((1, source), (3, target)):
        if algebra.name and header.words[word] != algebra.name:
            raise reader.error(f"map names '{header.words[word]}' but the algebra is '{algebra.name}'", header, word)

    images: List[Optional[int]] = [None] * source.order
    while not reader.done and reader.peek().words[0] not in ("hom", "semiring", "base"):
        line = reader.next("a map line")
        if len(line.words) != 3 or line.words[1] != "->":
            raise reader.error("expected 'i -> j'", line)
        x, y = reader.integer(line, 0), reader.integer(line, 2)
        if not 0 <= x < source.order:
            raise reader.error(f"{x} is not an element of {source.label}", line, 0)
        if not 0 <= y < target.order:
            raise reader.error(f"{y} is not an element of {target.label}", line, 2)
        if images[x] is not None:
            raise reader.error(f"{x} is mapped twice", line, 0)
        images[x] = y
    missing = [x for x, y in enumerate(images) if y is None]
    if missing:
        raise reader.error(f"map leaves {missing} unassigned", header)
    return validate_hom(images, source, target)


def resolve_algebra(ref: str, base_dir: Optional[Path] = None) -> FiniteSemiring:
    """A built-in by name, or the plain algebra stored at ref."""
    salgebra = load_salgebra(ref, base_dir)
    return salgebra.algebra


def load_salgebra(ref: str, base_dir: Optional[Path] = None) -> SAlgebra:
    """A built-in (over N) by name, or the algebra or S-algebra stored at ref."""
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    if path.is_file():
        parsed = parse_algebra_file(path.read_text(encoding="utf-8"), str(path), path.parent)
        return parsed if isinstance(parsed, SAlgebra) else SAlgebra.over_naturals(parsed)
    if ref.upper() in FIXTURES:
        return SAlgebra.over_naturals(FIXTURES[ref.upper()])
    raise AlgebraSyntaxError(f"no such file or built-in algebra: {ref}", 0, 1, ref)


def parse_algebra_text(text: str, source: Optional[str] = None) -> FiniteSemiring:
    """Exactly one algebra block."""
    reader = _Reader(text, source)
    algebra = _read_algebra(reader)
    if not reader.done:
        raise reader.error("trailing content after the algebra block", reader.peek())
    return algebra


def parse_algebra_file(text: str, source: Optional[str] = None,
                       base_dir: Optional[Path] = None) -> Union[FiniteSemiring, SAlgebra]:
    """A plain algebra, or an S-algebra when the text opens with a base line."""
    reader = _Reader(text, source)
    first = reader.peek()
    if first is None:
        raise reader.error("empty algebra file")
    if first.words[0] != "base":
        return parse_algebra_text(text, source)

    line = reader.keyword("base", 1)
    ref = line.words[1]
    base = NATURALS if ref == "naturals" else BaseSemiring.finite(resolve_algebra(ref, base_dir))
    algebra = _read_algebra(reader)
    structure = None
    if not reader.done:
        if base.is_naturals:
            raise reader.error("an S-algebra over naturals takes no structure map", reader.peek())
        structure = _read_map(reader, base.semiring, algebra).images
    if not reader.done:
        raise reader.error("trailing content after the structure map", reader.peek())
    return validate_salgebra(base, algebra, structure)


def parse_map_text(text: str, source: FiniteSemiring, target: FiniteSemiring,
                   origin: Optional[str] = None) -> Homomorphism:
    reader = _Reader(text, origin)
    hom = _read_map(reader, source, target)
    if not reader.done:
        raise reader.error("trailing content after the map", reader.peek())
    return hom


def load_map(path: Union[str, Path], source: FiniteSemiring, target: FiniteSemiring) -> Homomorphism:
    path = Path(path)
    if not path.is_file():
        raise AlgebraSyntaxError(f"no such map file: {path}", 0, 1, str(path))
    return parse_map_text(path.read_text(encoding="utf-8"), source, target, str(path))


def parse_diagram_text(text: str, source: Optional[str] = None, base_dir: Optional[Path] = None) -> Diagram:
    """`object FILE` lines, then `arrow I J MAPFILE` lines; paths are relative to base_dir."""
    reader = _Reader(text, source)
    objects: List[SAlgebra] = []
    arrows: List[DiagramArrow] = []
    while not reader.done:
        line = reader.next("'object' or 'arrow'")
        kind = line.words[0]
        if kind == "object" and len(line.words) == 2:
            if arrows:
                raise reader.error("objects must precede arrows", line)
            objects.append(load_salgebra(line.words[1], base_dir))
        elif kind == "arrow" and len(line.words) == 4:
            i, j = reader.integer(line, 1), reader.integer(line, 2)
            for word, k in ((1, i), (2, j)):
                if not 0 <= k < len(objects):
                    raise reader.error(f"no object {k}", line, word)
            map_path = Path(line.words[3])
            if base_dir is not None and not map_path.is_absolute():
                map_path = base_dir / map_path
            hom = load_map(map_path, objects[i].algebra, objects[j].algebra)
            arrows.append(DiagramArrow(i, j, hom))
        else:
            raise reader.error("expected 'object FILE' or 'arrow I J MAPFILE'", line)
    return Diagram(tuple(objects), tuple(arrows))


def load_diagram(path: Union[str, Path]) -> Diagram:
    path = Path(path)
    if not path.is_file():
        raise AlgebraSyntaxError(f"no such diagram file: {path}", 0, 1, str(path))
    return parse_diagram_text(path.read_text(encoding="utf-8"), str(path), path.parent)


def _rows(table) -> List[str]:
    return [" ".join(str(int(v)) for v in row) for row in table]


def format_algebra(algebra: FiniteSemiring, name: Optional[str] = None) -> str:
    label = (name or algebra.name or f"A{algebra.order}").replace(" ", "_")
    lines = [f"semiring {label}", f"order {algebra.order}", "add"]
    lines += _rows(algebra.add)
    lines.append("mul")
    lines += _rows(algebra.mul)
    return "\n".join(lines) + "\n"


def format_map(hom: Homomorphism) -> str:
    src = hom.source.name or f"A{hom.source.order}"
    dst = hom.target.name or f"A{hom.target.order}"
    lines = [f"hom {src} -> {dst}"] + [f"{x} -> {y}" for x, y in enumerate(hom.images)]
    return "\n".join(lines) + "\n"


def format_salgebra(salgebra: SAlgebra) -> str:
    if salgebra.base.is_naturals:
        return "base naturals\n" + format_algebra(salgebra.algebra)
    return f"base {salgebra.base.label}\n" + format_algebra(salgebra.algebra) + format_map(salgebra.structure)

