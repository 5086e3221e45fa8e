"""Command-line front end: file formats, dispatch, report rendering.

Input files are line-oriented and whitespace-separated, ending each
document with a bare ``end`` line::

    lattice C3          map f : C3 -> C2    space S
    elements 3          0 -> 0              points 2
    order               1 -> 1              open
    0 1                 2 -> 1              open 1
    1 2                 end                 open 0 1
    end                                     end

Order lines are generating pairs (the reflexive-transitive closure is
applied); relation documents use ``relation R : 2 -> 3`` headers with
one pair per line; a bare ``open`` line is the empty set.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, replace

from .cats import (
    ofrm_equalizer,
    equalizer_search,
    oa_product,
    pow_functor_report,
    replay_counterexample,
    weak_equalizer_check,
    zero_object_check,
)
from .config import Caps, default_caps
from .errors import OakitError, ParseError, ValidationError
from .lattice import (
    FinLattice,
    Topology,
    frame_report,
    lattice_from_poset,
    poset_from_pairs,
    topology_from_opens,
)
from .maps import LatticeMap, compose, dagger, join_map, morphism_report, preserves_finite_meets
from .overlap import (
    OverlapReport,
    atoms_and_iso,
    booleanize,
    check_overlap_algebra,
    join_irreducibles,
)
from .subloc import enumerate_nuclei, regular_open_algebra, sublocale_joinmap_bijection


@dataclass(frozen=True)
class Document:
    kind: str  # lattice | map | relation | space
    name: str
    payload: tuple


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_documents(text: str) -> list[Document]:
    docs: list[Document] = []
    lines = list(_tokens(text))
    i = 0
    while i < len(lines):
        lineno, words = lines[i]
        kind = words[0]
        if kind == "lattice":
            if len(words) != 2:
                raise ParseError(f"line {lineno}: expected 'lattice NAME'")
            name = words[1]
            i += 1
            if i >= len(lines) or lines[i][1][0] != "elements" or len(lines[i][1]) != 2:
                where = lines[i][0] if i < len(lines) else lineno
                raise ParseError(f"line {where}: expected 'elements N' after lattice header")
            n = _int(lines[i])
            i += 1
            if i >= len(lines) or lines[i][1] != ["order"]:
                raise ParseError(f"line {lines[i][0] if i < len(lines) else lineno}: expected 'order'")
            i += 1
            pairs = []
            while i < len(lines) and lines[i][1] != ["end"]:
                ln, ws = lines[i]
                if len(ws) != 2:
                    raise ParseError(f"line {ln}: order lines are pairs 'i j'")
                pairs.append((_int_word(ln, ws[0], n), _int_word(ln, ws[1], n)))
                i += 1
            _expect_end(lines, i, lineno)
            P = poset_from_pairs(n, pairs)
            closed = tuple(sorted(
                (a, b) for a in range(n) for b in range(n)
                if a != b and P.leq(a, b)))
            docs.append(Document("lattice", name, (n, closed)))
        elif kind == "map":
            if len(words) != 6 or words[2] != ":" or words[4] != "->":
                raise ParseError(f"line {lineno}: expected 'map NAME : SRC -> TGT'")
            name, src, tgt = words[1], words[3], words[5]
            i += 1
            images: dict[int, int] = {}
            while i < len(lines) and lines[i][1] != ["end"]:
                ln, ws = lines[i]
                if len(ws) != 3 or ws[1] != "->":
                    raise ParseError(f"line {ln}: map lines are 'i -> j'")
                x = _int_word(ln, ws[0])
                if x in images:
                    raise ParseError(f"line {ln}: element {x} mapped twice")
                images[x] = _int_word(ln, ws[2])
                i += 1
            _expect_end(lines, i, lineno)
            if sorted(images) != list(range(len(images))):
                raise ParseError(
                    f"line {lineno}: map must cover source elements 0..{max(images, default=0)}")
            docs.append(Document(
                "map", name,
                (src, tgt, tuple(images[x] for x in range(len(images))))))
        elif kind == "relation":
            if len(words) != 6 or words[2] != ":" or words[4] != "->":
                raise ParseError(f"line {lineno}: expected 'relation NAME : NX -> NY'")
            name = words[1]
            nX = _int_word(lineno, words[3])
            nY = _int_word(lineno, words[5])
            i += 1
            pairs = []
            while i < len(lines) and lines[i][1] != ["end"]:
                ln, ws = lines[i]
                if len(ws) != 2:
                    raise ParseError(f"line {ln}: relation lines are pairs 'x y'")
                pairs.append((_int_word(ln, ws[0], nX), _int_word(ln, ws[1], nY)))
                i += 1
            _expect_end(lines, i, lineno)
            docs.append(Document("relation", name, (nX, nY, tuple(sorted(set(pairs))))))
        elif kind == "space":
            if len(words) != 2:
                raise ParseError(f"line {lineno}: expected 'space NAME'")
            name = words[1]
            i += 1
            if i >= len(lines) or lines[i][1][0] != "points" or len(lines[i][1]) != 2:
                where = lines[i][0] if i < len(lines) else lineno
                raise ParseError(f"line {where}: expected 'points N' after space header")
            n = _int(lines[i])
            i += 1
            opens = []
            while i < len(lines) and lines[i][1] != ["end"]:
                ln, ws = lines[i]
                if ws[0] != "open":
                    raise ParseError(f"line {ln}: expected 'open [members...]'")
                mask = 0
                for w in ws[1:]:
                    mask |= 1 << _int_word(ln, w, n)
                opens.append(mask)
                i += 1
            _expect_end(lines, i, lineno)
            docs.append(Document("space", name, (n, tuple(sorted(set(opens))))))
        else:
            raise ParseError(f"line {lineno}: unknown document kind {kind!r}")
        i += 1
    return docs


def parse_input(text: str) -> Document:
    docs = parse_documents(text)
    if len(docs) != 1:
        raise ParseError(f"expected exactly one document, got {len(docs)}")
    return docs[0]


def _int(line) -> int:
    return _int_word(line[0], line[1][1])


def _int_word(lineno: int, word: str, bound: int | None = None) -> int:
    try:
        v = int(word)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {word!r}") from None
    if v < 0 or (bound is not None and v >= bound):
        raise ParseError(f"line {lineno}: index {v} out of range")
    return v


def _expect_end(lines, i, start):
    if i >= len(lines):
        raise ParseError(f"line {start}: document is missing its 'end' line")


def render(d: Document) -> str:
    if d.kind == "lattice":
        n, pairs = d.payload
        body = "\n".join(f"{a} {b}" for a, b in pairs)
        return f"lattice {d.name}\nelements {n}\norder\n{body}\nend\n".replace("\n\n", "\n")
    if d.kind == "map":
        src, tgt, images = d.payload
        body = "\n".join(f"{x} -> {y}" for x, y in enumerate(images))
        return f"map {d.name} : {src} -> {tgt}\n{body}\nend\n"
    if d.kind == "relation":
        nX, nY, pairs = d.payload
        body = "\n".join(f"{x} {y}" for x, y in pairs)
        return (f"relation {d.name} : {nX} -> {nY}\n{body}\nend\n"
                .replace("\n\n", "\n"))
    if d.kind == "space":
        n, opens = d.payload
        body = "\n".join("open" + "".join(f" {i}" for i in range(n) if m >> i & 1)
                         for m in opens)
        return f"space {d.name}\npoints {n}\n{body}\nend\n".replace("\n\n", "\n")
    raise ValueError(d.kind)


class Workspace:
    """Documents loaded for one invocation, resolved by name."""

    def __init__(self, caps: Caps):
        self.caps = caps
        self.docs: dict[str, Document] = {}

    def load(self, paths) -> None:
        for path in paths:
            try:
                text = open(path).read()
            except OSError as exc:
                raise ValidationError(f"cannot read {path}: {exc}") from None
            for d in parse_documents(text):
                if d.name in self.docs:
                    raise ValidationError(f"duplicate document name {d.name!r}")
                self.docs[d.name] = d

    def _doc(self, name: str | None, kind: str) -> Document:
        if name is not None:
            if name not in self.docs:
                raise ValidationError(f"no document named {name!r}")
            d = self.docs[name]
            if d.kind != kind:
                raise ValidationError(f"{name!r} is a {d.kind}, expected {kind}")
            return d
        matches = [d for d in self.docs.values() if d.kind == kind]
        if len(matches) != 1:
            raise ValidationError(
                f"expected exactly one {kind} document, found {len(matches)}; name one")
        return matches[0]

    def lattice(self, name: str | None = None) -> FinLattice:
        d = self._doc(name, "lattice")
        n, pairs = d.payload
        return lattice_from_poset(poset_from_pairs(n, pairs), caps=self.caps)

    def space(self, name: str | None = None) -> Topology:
        d = self._doc(name, "space")
        n, opens = d.payload
        return topology_from_opens(n, opens)

    def map(self, name: str | None = None) -> LatticeMap:
        d = self._doc(name, "map")
        src, tgt, images = d.payload
        return join_map(self.lattice(src), self.lattice(tgt), images)

    def lattices(self) -> list[tuple[str, FinLattice]]:
        return [(d.name, self.lattice(d.name))
                for d in self.docs.values() if d.kind == "lattice"]


def _jsonable(obj):
    if hasattr(obj, "as_dict"):
        return _jsonable(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
        return [_jsonable(v) for v in items]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    return str(obj)


def _yn(b) -> str:
    if b is None:
        return "n/a"
    return "yes" if b else "no"


def render_report(report, as_json: bool = False) -> str:
    """Human text by default; with as_json a canonical key-sorted form."""
    if as_json:
        return json.dumps(_jsonable(report), sort_keys=True, separators=(",", ":"))
    if isinstance(report, OverlapReport):
        lines = [f"o-algebra: {_yn(report.is_overlap_algebra)} "
                 f"(boolean crosscheck: {_yn(report.boolean_crosscheck)})"]
        for ax in ("symmetry", "meet_closure", "splitting", "monotonicity", "density"):
            res = getattr(report, ax)
            mark = _yn(res.holds)
            if res.witness is not None:
                mark += f"  witness {tuple(res.witness)}"
            lines.append(f"  {ax}: {mark}")
        if report.base_used is not None:
            lines.append(f"  base: {list(report.base_used)}")
        return "\n".join(lines)
    data = _jsonable(report)
    if isinstance(data, dict):
        out = []
        for k in sorted(data):
            v = data[k]
            out.append(f"{k}: {_yn(v) if isinstance(v, bool) or v is None else v}")
        return "\n".join(out)
    return str(data)


def _emit(args, report) -> None:
    print(render_report(report, as_json=args.json))


def _caps_from(args) -> Caps:
    caps = default_caps()
    if getattr(args, "cap", None) is not None:
        caps = replace(caps, lattice_max=args.cap)
    return caps


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="oakit",
                                  description="finite overlap-algebra toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, *, files=0, help=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        if files:
            p.add_argument("files", nargs="+" if files == 1 else "*")
        return p

    cmd("check-frame", files=1)
    cmd("check-oa", files=1)
    cmd("atoms", files=1)
    cmd("booleanize", files=1)
    cmd("base", files=1)
    p = cmd("dagger", files=1)
    p.add_argument("--map", dest="map_name", default=None)
    p = cmd("report-map", files=1)
    p.add_argument("--map", dest="map_name", default=None)
    p = cmd("compose", files=1)
    p.add_argument("--maps", nargs=2, required=True, metavar=("OUTER", "INNER"))
    cmd("product", files=1)
    p = cmd("equalizer", files=1)
    p.add_argument("--maps", nargs=2, required=True)
    p.add_argument("--search-bound", type=int, default=4)
    p = cmd("weak-equalizer", files=1)
    p.add_argument("--maps", nargs=3, required=True, metavar=("T", "F", "G"))
    p = cmd("replay")
    p.add_argument("what", choices=["equalizer"])
    p = cmd("pow-functor")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    cmd("nuclei", files=1)
    cmd("sublocales", files=1)
    cmd("regular-open", files=1)
    cmd("zero-object")
    return top


def run_command(argv) -> int:
    """Dispatch one invocation; 0 ok, 1 failed property, 2 bad input."""
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    caps = _caps_from(args)
    ws = Workspace(caps)
    try:
        if getattr(args, "files", None):
            ws.load(args.files)
        return _dispatch(args, ws, caps)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OakitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, ws: Workspace, caps: Caps) -> int:
    cmdname = args.command
    if cmdname == "check-frame":
        L = ws.lattice()
        rep = frame_report(L)
        _emit(args, rep)
        return 0 if rep.is_frame else 1
    if cmdname == "check-oa":
        rep = check_overlap_algebra(ws.lattice(), caps=caps)
        _emit(args, rep)
        return 0 if rep.is_overlap_algebra else 1
    if cmdname == "atoms":
        L = ws.lattice()
        atoms, is_atomic, f, _ = atoms_and_iso(L)
        out = {
            "atoms": sorted(atoms),
            "atom_names": [L.name(a) for a in sorted(atoms)],
            "is_atomic": is_atomic,
            "iso_target_atoms": f.target.atoms_of if f is not None else None,
        }
        _emit(args, out)
        return 0 if is_atomic else 1
    if cmdname == "booleanize":
        negneg, overlapized, agree = booleanize(ws.lattice(), caps=caps)
        _emit(args, {"negneg_size": negneg.size,
                     "overlap_closure_size": overlapized.size,
                     "agree": agree})
        return 0 if agree else 1
    if cmdname == "base":
        L = ws.lattice()
        base = sorted(join_irreducibles(L))
        based = check_overlap_algebra(L, base=base, caps=caps)
        plain = check_overlap_algebra(L, caps=caps)
        same = based.is_overlap_algebra == plain.is_overlap_algebra
        _emit(args, {"base": base,
                     "base_names": [L.name(a) for a in base],
                     "based_verdict": based.is_overlap_algebra,
                     "unbased_verdict": plain.is_overlap_algebra,
                     "verdicts_agree": same})
        return 0 if same else 1
    if cmdname == "dagger":
        f = ws.map(args.map_name)
        fd = dagger(f, caps=caps)
        _emit(args, {"images": list(fd.images),
                     "image_names": [fd.target.name(y) for y in fd.images]})
        return 0
    if cmdname == "report-map":
        rep = morphism_report(ws.map(args.map_name), caps=caps)
        _emit(args, rep)
        return 0 if not rep.law_failures else 1
    if cmdname == "compose":
        outer, inner = (ws.map(nm) for nm in args.maps)
        h = compose(outer, inner)
        _emit(args, {"images": list(h.images)})
        return 0
    if cmdname == "product":
        Ls = [L for _, L in ws.lattices()]
        if len(Ls) < 2:
            raise ValidationError("product needs at least two lattice documents")
        w = oa_product(Ls, caps=caps)
        _emit(args, w)
        return 0 if w.pos_law and w.projection_daggers else 1
    if cmdname == "equalizer":
        f, g = (ws.map(nm) for nm in args.maps)
        if preserves_finite_meets(f) and preserves_finite_meets(g):
            wit = ofrm_equalizer(f, g, caps=caps)
            _emit(args, wit)
            return 0 if wit.universal else 1
        from .corpus import boolean_algebras
        found = equalizer_search(
            f, g, boolean_algebras(args.search_bound), caps=caps)
        _emit(args, {"equalizer_found": found is not None,
                     "images": list(found.arrow.images) if found else None})
        return 0
    if cmdname == "weak-equalizer":
        t, f, g = (ws.map(nm) for nm in args.maps)
        from .corpus import boolean_algebras
        rep = weak_equalizer_check(t, f, g, boolean_algebras(4))
        _emit(args, rep)
        return 0 if rep.equalizes and rep.factors else 1
    if cmdname == "replay":
        rep = replay_counterexample(caps=caps)
        _emit(args, rep)
        return 0 if rep.verdict == "NO_EQUALIZER" else 1
    if cmdname == "pow-functor":
        rep = pow_functor_report(args.n, args.m, seed=args.seed, caps=caps)
        _emit(args, rep)
        ok = (rep.faithful and rep.full and rep.dagger_preserved
              and rep.functorial and rep.coproduct_iso)
        return 0 if ok else 1
    if cmdname == "nuclei":
        L = ws.lattice()
        js = enumerate_nuclei(L, caps=caps)
        _emit(args, {"count": len(js),
                     "nuclei": [list(j.images) for j in js]})
        return 0
    if cmdname == "sublocales":
        rep = sublocale_joinmap_bijection(ws.lattice(), caps=caps)
        _emit(args, rep)
        return 0 if rep.counts_agree and rep.mutually_inverse else 1
    if cmdname == "regular-open":
        T = ws.space()
        R = regular_open_algebra(T, caps=caps)
        _emit(args, {"size": R.size,
                     "elements": [R.name(x) for x in range(R.size)]})
        return 0
    if cmdname == "zero-object":
        rep = zero_object_check(caps=caps)
        _emit(args, rep)
        return 0 if rep.holds else 1
    raise ValidationError(f"unknown command {cmdname!r}")


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
