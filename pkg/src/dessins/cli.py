"""Command-line interface.

Subcommands cover the whole library surface: dessin info, regular covers,
central quotients, isomorphism and kernel tests, orbit reports, passport
enumeration, word evaluation, coset enumeration, triangle-group checks and
DOT export. Every command is deterministic.

Dessin files are four lines::

    name h0
    degree 12
    x (1,2,3,7,8,9)(6,12)
    y (1,4)(2,5)(7,10)(8,11)(3,6,9,12)

with cycles in the usual 1-based notation and fixed points omitted. The
sample dessins h0, h1, h2 and f ship with the package; a FILE argument
whose path does not exist but whose basename is one of those names loads
the bundled copy.

Exit codes: 0 success, 1 domain error, 2 usage error. The environment
variable DESSIN_CAP overrides the default size caps where no explicit
--cap flag is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from typing import Optional, Sequence

from dessins import dessin as dessin_mod
from dessins import moduli, triangle
from dessins.dessin import (
    Dessin,
    Passport,
    enumerate_by_passport,
    isomorphic,
    quotient_by_central,
    regular_cover,
)
from dessins.errors import DessinsError
from dessins.fpgroup import Presentation, coset_enumerate
from dessins.perm import CycleType, Permutation, parse_cycles, print_cycles
from dessins.words import bundled_witness, parse_word

BUNDLED = ("h0", "h1", "h2", "f")


class _Out:
    """plain ('key: value') or records ('key=value') line output."""

    def __init__(self, fmt: str):
        self.records = fmt == "records"

    def emit(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        sep = "=" if self.records else ": "
        print(f"{key}{sep}{value}")


def load_dessin(path: str) -> Dessin:
    if not os.path.exists(path):
        base = os.path.basename(path)
        if base in BUNDLED:
            text = resources.files("dessins.data").joinpath(base).read_text()
            return parse_dessin_text(text)
        raise DessinsError(f"no such file: {path}")
    with open(path) as fh:
        return parse_dessin_text(fh.read())


def parse_dessin_text(text: str) -> Dessin:
    fields = {}
    order = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        fields[key] = value.strip()
        order.append(key)
    if order != ["name", "degree", "x", "y"]:
        raise DessinsError("dessin file must have lines: name, degree, x, y (in that order)")
    degree = int(fields["degree"])
    sigma_x = parse_cycles(fields["x"], degree)
    sigma_y = parse_cycles(fields["y"], degree)
    return Dessin(sigma_x, sigma_y, name=fields["name"])


def format_dessin(d: Dessin) -> str:
    return (
        f"name {d.name or 'dessin'}\n"
        f"degree {d.degree}\n"
        f"x {print_cycles(d.sigma_x)}\n"
        f"y {print_cycles(d.sigma_y)}\n"
    )


def write_dessin(d: Dessin, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_dessin(d))


def parse_cycle_type(text: str) -> CycleType:
    parts: list[int] = []
    for piece in text.replace(",", " ").split():
        if "^" in piece:
            base, _, exp = piece.partition("^")
            parts.extend([int(base)] * int(exp))
        else:
            parts.append(int(piece))
    if not parts:
        raise DessinsError(f"empty cycle type in passport part {text!r}")
    return CycleType(parts)


def parse_passport(text: str) -> Passport:
    pieces = text.split("|")
    if len(pieces) != 3:
        raise DessinsError("passport must have three parts separated by '|'")
    return Passport(*(parse_cycle_type(p) for p in pieces))


def parse_type(text: str) -> tuple[int, int, int]:
    entries = [int(v) for v in text.replace(",", " ").split()]
    if len(entries) != 3:
        raise DessinsError("triangle type needs three integers")
    return tuple(entries)


def split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside (...) or [...]."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return [piece.strip() for piece in out if piece.strip()]


def default_cap(fallback: int) -> int:
    value = os.environ.get("DESSIN_CAP")
    return int(value) if value else fallback


def export_dot(d: Dessin) -> str:
    """Bipartite multigraph: black nodes from sigma_x cycles, white from sigma_y."""

    def cycles_with_fixed(p: Permutation) -> list[tuple[int, ...]]:
        cycles = p.cycles()
        in_cycle = {pt for c in cycles for pt in c}
        cycles.extend((pt,) for pt in range(1, p.degree + 1) if pt not in in_cycle)
        return sorted(cycles, key=min)

    black = cycles_with_fixed(d.sigma_x)
    white = cycles_with_fixed(d.sigma_y)
    black_of = {pt: i for i, c in enumerate(black) for pt in c}
    white_of = {pt: i for i, c in enumerate(white) for pt in c}
    lines = [f'graph "{d.name or "dessin"}" {{']
    for i in range(len(black)):
        lines.append(f'  b{i} [shape=circle, style=filled, fillcolor=black, label=""];')
    for i in range(len(white)):
        lines.append(f'  w{i} [shape=circle, label=""];')
    for e in range(1, d.degree + 1):
        lines.append(f'  b{black_of[e]} -- w{white_of[e]} [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subcommands -----------------------------------------------------------


def cmd_info(args, out: _Out) -> int:
    d = load_dessin(args.file)
    out.emit("name", d.name or "dessin")
    out.emit("degree", d.degree)
    out.emit("passport", d.passport())
    out.emit("genus", d.genus())
    out.emit("monodromy-order", d.monodromy_group().order())
    regular = d.is_regular()
    out.emit("regular", regular)
    if regular:
        out.emit("type", d.type_of_regular())
    return 0


def cmd_cover(args, out: _Out) -> int:
    d = load_dessin(args.file)
    cover = regular_cover(d, cap=args.cap)
    out.emit("cover-degree", cover.degree)
    out.emit("cover-genus", cover.genus())
    out.emit("cover-type", cover.type_of_regular())
    if args.output:
        write_dessin(cover, args.output)
        out.emit("written", args.output)
    return 0


def cmd_quotient_center(args, out: _Out) -> int:
    d = load_dessin(args.file)
    cover = regular_cover(d, cap=args.cap)
    center = cover.monodromy_group().center()
    quotient = quotient_by_central(cover, center)
    out.emit("cover-degree", cover.degree)
    out.emit("cover-genus", cover.genus())
    out.emit("center-order", len(center))
    out.emit("quotient-degree", quotient.degree)
    out.emit("quotient-type", quotient.type_of_regular())
    out.emit("quotient-genus", quotient.genus())
    if args.output:
        write_dessin(quotient.with_name(f"{d.name}-central-quotient" if d.name else "quotient"), args.output)
        out.emit("written", args.output)
    return 0


def cmd_iso(args, out: _Out) -> int:
    d1, d2 = load_dessin(args.a), load_dessin(args.b)
    bijection = isomorphic(d1, d2)
    out.emit("isomorphic", bijection is not None)
    if bijection is not None:
        out.emit("bijection", " ".join(f"{i + 1}->{v}" for i, v in enumerate(bijection)))
    return 0


def cmd_kernels(args, out: _Out) -> int:
    d1, d2 = load_dessin(args.a), load_dessin(args.b)
    equal = moduli.kernels_equal(d1, d2)
    out.emit("kernels", "equal" if equal else "distinct")
    out.emit("subdirect-order", moduli.subdirect_group(d1, d2).order())
    out.emit("monodromy-orders", f"{d1.monodromy_group().order()} {d2.monodromy_group().order()}")
    if args.witness:
        witness = moduli.distinguishing_witness(d1, d2, budget=args.budget)
        if witness is None:
            out.emit("witness", "none (kernels equal)")
        else:
            out.emit("witness", witness)
            out.emit("witness-on-a", witness.evaluate(d1.sigma_x, d1.sigma_y))
            out.emit("witness-on-b", witness.evaluate(d2.sigma_x, d2.sigma_y))
        g = bundled_witness()
        out.emit("bundled-witness", g)
        out.emit("bundled-witness-on-a", g.evaluate(d1.sigma_x, d1.sigma_y))
        out.emit("bundled-witness-on-b", g.evaluate(d2.sigma_x, d2.sigma_y))
    return 0


def cmd_orbit(args, out: _Out) -> int:
    dessins = [load_dessin(f) for f in args.files]
    report = moduli.orbit_report(dessins, with_witnesses=args.witness)
    for i, name in enumerate(report.names):
        prefix = f"dessin.{i}" if out.records else name
        out.emit(f"{prefix}.passport", report.passports[i])
        out.emit(f"{prefix}.genus", report.genera[i])
        out.emit(f"{prefix}.monodromy-order", report.monodromy_orders[i])
        out.emit(f"{prefix}.cover-degree", report.cover_degrees[i])
        out.emit(f"{prefix}.cover-genus", report.cover_genera[i])
    for i in range(len(dessins)):
        for j in range(i + 1, len(dessins)):
            label = f"{i}.{j}" if out.records else f"{report.names[i]},{report.names[j]}"
            out.emit(f"isomorphic.{label}", report.isomorphic_matrix[i][j])
            out.emit(f"kernels-equal.{label}", report.kernel_matrix[i][j])
            if (i, j) in report.witnesses:
                out.emit(f"witness.{label}", report.witnesses[(i, j)])
    return 0


def cmd_enum(args, out: _Out) -> int:
    passport = parse_passport(args.passport)
    found = enumerate_by_passport(passport, cap_degree=args.cap_degree)
    if args.genus is not None:
        found = [d for d in found if d.genus() == args.genus]
    out.emit("count", len(found))
    for i, d in enumerate(found):
        group = d.monodromy_group()
        out.emit(
            f"dessin.{i}",
            f"x={print_cycles(d.sigma_x)} y={print_cycles(d.sigma_y)} "
            f"genus={d.genus()} order={group.order()} "
            f"full-symmetric={'yes' if group.is_full_symmetric() else 'no'}",
        )
    return 0


def cmd_word_eval(args, out: _Out) -> int:
    d = load_dessin(args.file)
    w = parse_word(args.word)
    out.emit("word", w)
    out.emit("image", w.evaluate(d.sigma_x, d.sigma_y))
    return 0


def cmd_coset_enum(args, out: _Out) -> int:
    relators = tuple(parse_word(text) for text in split_top_level(args.relators))
    index, action = coset_enumerate(Presentation(relators, cap=args.cap))
    out.emit("index", index)
    out.emit("action-x", print_cycles(action.sigma_x))
    out.emit("action-y", print_cycles(action.sigma_y))
    return 0


def cmd_maximal(args, out: _Out) -> int:
    t = parse_type(args.type)
    maximal, inclusions = triangle.is_maximal(t)
    out.emit("type", f"({t[0]},{t[1]},{t[2]})")
    out.emit("maximal", maximal)
    for i, inc in enumerate(inclusions):
        out.emit(f"inclusion.{i}", inc)
    return 0


def cmd_normality(args, out: _Out) -> int:
    d = load_dessin(args.file)
    sub_text, _, sup_text = args.inclusion.partition(":")
    if not sup_text:
        raise DessinsError("--inclusion takes the form p,q,r:P,Q,R")
    inc = triangle.find_inclusion(parse_type(sub_text), parse_type(sup_text))
    out.emit("inclusion", inc)
    out.emit("normal", triangle.normal_in_supergroup(d, inc))
    return 0


def cmd_export_dot(args, out: _Out) -> int:
    d = load_dessin(args.file)
    text = export_dot(d)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        out.emit("written", args.output)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dessins", description="dessins d'enfants as permutation pairs"
    )
    parser.add_argument(
        "--format", choices=("plain", "records"), default="plain", help="output style"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="degree, passport, genus, monodromy order")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("cover", help="regular cover of a dessin")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--cap", type=int, default=default_cap(dessin_mod.DEFAULT_COVER_CAP))
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("quotient-center", help="cover, center and central quotient in one step")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--cap", type=int, default=default_cap(dessin_mod.DEFAULT_COVER_CAP))
    p.set_defaults(func=cmd_quotient_center)

    p = sub.add_parser("iso", help="edge bijection between two dessins, if any")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("kernels", help="do two dessins share their monodromy kernel?")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness", action="store_true", help="also search a distinguishing word")
    p.add_argument("--budget", type=int, default=default_cap(moduli.DEFAULT_WITNESS_BUDGET))
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("orbit", help="pairwise isomorphism and kernel report")
    p.add_argument("files", nargs="+")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("enum", help="enumerate dessins with a passport")
    p.add_argument("--passport", required=True, help="e.g. '2^2 1 1|3 2 1|6'")
    p.add_argument("--genus", type=int)
    p.add_argument(
        "--cap-degree", type=int, default=default_cap(dessin_mod.DEFAULT_ENUM_CAP_DEGREE)
    )
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("word-eval", help="evaluate a word under a dessin's monodromy")
    p.add_argument("file")
    p.add_argument("word")
    p.set_defaults(func=cmd_word_eval)

    p = sub.add_parser("coset-enum", help="index of the normal closure of relators")
    p.add_argument("--relators", required=True, help="e.g. 'x^3,y^2,[x,x^y]'")
    p.add_argument("--cap", type=int, default=default_cap(10**5))
    p.set_defaults(func=cmd_coset_enum)

    p = sub.add_parser("maximal", help="triangle-type maximality per the inclusion table")
    p.add_argument("--type", required=True, help="e.g. '6,4,12'")
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("normality", help="normality of a regular dessin in a bigger triangle group")
    p.add_argument("file")
    p.add_argument("--inclusion", required=True, help="sub:super, e.g. '6,4,6:6,8,2'")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("export-dot", help="bipartite graph in DOT format")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.format)
    try:
        return args.func(args, out)
    except DessinsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
