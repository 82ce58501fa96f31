"""The ``grp`` command: group files, reports, the lemma registry and a result cache."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, catalog
from .constructors import FamilyError, GroupFamilySpec, make
from .group import GroupError, PermGroup, TooLargeError
from .perm import Permutation, PermutationError
from .reduction import (PSL2_QS, Inapplicable, almost_simple_census, conjecture_scan,
                        psl2_table, wreath_embed)
from .series import chief_series, composition_series, induced_aut, rc_series
from .subgroups import SCHEMA_VERSION, DivSylReport, divsyl_check
from .sylow import nu_p
from .verify import LEMMAS, run_lemma

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
CACHE_ENV = "GRP_CACHE_DIR"
CACHE_DEFAULT = ".grp-cache"
CACHE_VERSION = f"divsyl-{__version__}/schema-{SCHEMA_VERSION}"


# -- group files ------------------------------------------------------------------

class GroupFileError(GroupError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_().,+-]*$")
_GEN = re.compile(r"\s*(\(\s*(?:\d+(?:\s+\d+)*)?\s*\)\s*)+$")


def parse_group_file(text: str) -> tuple[str, PermGroup]:
    name, degree, gens = None, None, []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "name":
            if not _IDENT.match(rest):
                raise GroupFileError(no, f"bad name {rest!r}")
            name = rest
        elif word == "degree":
            if not rest.isdigit():
                raise GroupFileError(no, f"degree must be a non-negative integer, got {rest!r}")
            degree = int(rest)
        elif word == "gen":
            if not _GEN.match(rest):
                raise GroupFileError(no, f"malformed cycles {rest!r}")
            gens.append((no, rest))
        else:
            raise GroupFileError(no, f"unknown directive {word!r}")
    if degree is None:
        raise GroupFileError(0, "missing degree directive")
    perms = []
    for no, rest in gens:
        try:
            perms.append(Permutation.parse(rest, degree))
        except PermutationError as e:
            raise GroupFileError(no, str(e)) from None
    name = name or "G"
    return name, PermGroup(degree, perms, name=name)


def render_group_file(name: str, G: PermGroup) -> str:
    lines = [f"name {name}", f"degree {G.degree}"]
    lines += [f"gen {g}" for g in G.generators]
    return "\n".join(lines) + "\n"


def _safe_name(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9_().,+-]", "_", s)


def load_group(arg: str) -> PermGroup:
    """A group file path, or failing that a family or catalog name."""
    path = Path(arg)
    if path.is_file():
        _, G = parse_group_file(path.read_text(encoding="utf-8"))
        return G
    names = {e.name for e in catalog.SMALL + catalog.FAMILIES}
    if arg in names:
        return catalog.group(arg)
    try:
        spec = GroupFamilySpec.parse(arg)
    except (FamilyError, ValueError):
        raise GroupError(f"{arg!r} is neither a group file nor a known group name") from None
    return make(spec)


# -- cache ----------------------------------------------------------------------------

def cache_key(G: PermGroup) -> str:
    h = hashlib.sha256()
    h.update(str(G.degree).encode())
    for g in sorted(tuple(g) for g in G.generators):
        h.update(b"|" + ",".join(map(str, g)).encode())
    return h.hexdigest()


@dataclass
class CacheEntry:
    key: str
    kind: str
    payload: dict
    version: str = CACHE_VERSION


class Cache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root or os.environ.get(CACHE_ENV) or CACHE_DEFAULT)

    def path(self, key: str, kind: str) -> Path:
        return self.root / f"{key}.{_safe_name(kind)}.json"

    def get(self, key: str, kind: str) -> dict | None:
        try:
            d = json.loads(self.path(key, kind).read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        # stale or foreign entries are ignored
        if not isinstance(d, dict) or d.get("version") != CACHE_VERSION \
                or d.get("key") != key or d.get("kind") != kind:
            return None
        return d.get("payload")

    def put(self, entry: CacheEntry) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        data = json.dumps({"version": entry.version, "key": entry.key, "kind": entry.kind,
                           "payload": entry.payload}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(data)
            os.replace(tmp, self.path(entry.key, entry.kind))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def cached(cache: Cache | None, G: PermGroup, kind: str, compute) -> dict:
    if cache is None:
        return compute()
    key = cache_key(G)
    hit = cache.get(key, kind)
    if hit is not None:
        return hit
    payload = compute()
    cache.put(CacheEntry(key, kind, payload))
    return payload


# -- output -----------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, Permutation):
        return str(x)
    if isinstance(x, PermGroup):
        return x.name or f"order {x.order}"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(d) -> str:
    return json.dumps(d, indent=2, default=_jsonable) + "\n"


def _emit(args, payload: dict, human: str) -> None:
    if args.output:
        Path(args.output).write_text(dumps(payload), encoding="utf-8")
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def _table(rows: list[list], head: list[str]) -> str:
    cells = [head] + [[str(c) for c in r] for r in rows]
    w = [max(len(r[i]) for r in cells) for i in range(len(head))]
    return "\n".join("  ".join(c.rjust(w[i]) for i, c in enumerate(r)) for r in cells) + "\n"


# -- subcommands ------------------------------------------------------------------------

class UsageError(Exception):
    pass


def _need(args, *names):
    flags = {"group": "-g", "prime": "-p"}
    missing = [flags[n] for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' and '.join(missing)}")


def cmd_nu(args, cache):
    _need(args, "group", "prime")
    G = load_group(args.group)

    def compute():
        c = nu_p(G, args.prime, args.seed)
        return {"group": G.name or args.group, "order": G.order, "prime": args.prime,
                "nu_p": c.nu_p, "normalizer_order": c.normalizer_order,
                "sylow_order": c.sylow.order,
                "sylow_generators": [str(g) for g in c.sylow.group.generators],
                "certificate_ok": c.check(), "seed": args.seed}

    d = cached(cache, G, f"sylow-p{args.prime}-s{args.seed}", compute)
    _emit(args, d, str(d["nu_p"]))
    return EXIT_OK if d["certificate_ok"] else EXIT_VIOLATION


def cmd_divsyl(args, cache):
    _need(args, "group", "prime")
    G = load_group(args.group)

    def compute():
        return divsyl_check(G, args.prime, args.mode, args.seed).to_dict()

    d = cached(cache, G, f"divsyl-p{args.prime}-{args.mode}-s{args.seed}", compute)
    rep = DivSylReport.from_dict(d)
    if args.output:
        Path(args.output).write_text(rep.to_json(), encoding="utf-8")
    else:
        rows = [[c.order, c.index, c.class_size if c.class_size is not None else "-", c.nu_p,
                 "yes" if c.divides else "NO"] for c in rep.classes]
        out = f"{rep.group}: order {rep.order}, nu_{rep.prime} = {rep.nu_p}, mode {rep.mode}\n"
        out += _table(rows, ["order", "index", "class", "nu_p", "divides"])
        if rep.violations:
            out += "violations:\n"
            for v in rep.violations:
                out += (f"  order {v.order}: nu_{rep.prime} = {v.nu_p} does not divide "
                        f"{rep.nu_p}; generators {' '.join(v.witness_generators)}\n")
        else:
            out += f"DivSyl({rep.prime}) holds\n"
        sys.stdout.write(out)
    return EXIT_OK if rep.satisfies else EXIT_VIOLATION


_SERIES = {"chief": chief_series, "composition": composition_series, "rc": rc_series}


def cmd_series(args, cache):
    _need(args, "group")
    G = load_group(args.group)

    def compute():
        s = _SERIES[args.kind](G, seed=args.seed)
        auts = [induced_aut(G, sec).image.order for sec in s.sections()]
        return {"group": G.name or args.group, "order": G.order, "kind": args.kind,
                "orders": s.orders, "section_orders": s.section_orders,
                "aut_orders": auts, "seed": args.seed}

    d = cached(cache, G, f"series-{args.kind}-s{args.seed}", compute)
    human = (f"{d['kind']} series of {d['group']}: " + " < ".join(map(str, d["orders"])) + "\n"
             + _table([[i + 1, a, b] for i, (a, b) in enumerate(zip(d["section_orders"],
                                                                     d["aut_orders"]))],
                      ["i", "section", "|Aut_G|"]))
    _emit(args, d, human)
    return EXIT_OK


def cmd_construct(args, cache):
    try:
        spec = GroupFamilySpec.parse(args.family)
    except ValueError as e:
        raise UsageError(str(e)) from None
    G = make(spec)
    text = render_group_file(_safe_name(str(spec)), G)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_embed(args, cache):
    _need(args, "group")
    G = load_group(args.group)
    w = wreath_embed(G)
    k = len(w.reps)
    d = {"group": G.name or args.group, "order": G.order, "k": k,
         "socle_order": w.socle.socle.order, "target_order": w.target.group.order,
         "image_order": w.image.order, "relation_holds": w.relation_holds,
         "injective": w.injective, "socle_maps_onto": w.socle_maps_onto,
         "covariance": w.covariance, "holds": w.holds}
    human = "\n".join(f"{a}: {b}" for a, b in d.items())
    _emit(args, d, human)
    return EXIT_OK if w.holds else EXIT_VIOLATION


def cmd_verify(args, cache):
    names = list(LEMMAS) if args.lemma == "all" else [args.lemma]
    reports = [run_lemma(n, args.catalog, args.seed, args.max_order) for n in names]
    lines = []
    for r in reports:
        app = sum(c.applicable for c in r.checks)
        lines.append(f"{r.lemma:12s} {'verified' if r.verified else 'FAILED':8s} "
                     f"{app} applicable checks over catalog {r.catalog}"
                     + (f", skipped {', '.join(r.skipped)}" if r.skipped else ""))
        for c in r.failures:
            lines.append(f"    counterexample: {c.group} p={c.p} {json.dumps(c.detail, default=_jsonable)}")
    payload = reports[0].to_dict() if len(reports) == 1 else \
        {"lemmas": [r.to_dict() for r in reports]}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(r.verified for r in reports) else EXIT_VIOLATION


def cmd_scan(args, cache):
    if args.what == "psl2":
        rows = psl2_table(PSL2_QS, args.seed)
        human = _table([[r["q"], r["p"], r["order"], r["nu_p"],
                         "yes" if r["satisfies"] else "no",
                         ", ".join(f"order {v['order']} (nu={v['nu_p']})" for v in r["violations"])
                         or "-"] for r in rows],
                       ["q", "p", "|G|", "nu_p", "DivSyl", "violating subgroups"])
        _emit(args, {"scan": "psl2", "seed": args.seed, "rows": rows}, human)
        return EXIT_OK if all(r["satisfies"] for r in rows) else EXIT_VIOLATION
    if args.what == "conjecture":
        bound = args.max_order or 10_000
        rows, bad = [], False
        for e in catalog.entries(args.catalog):
            if "simple" not in e.tags:
                continue
            S = catalog.group(e.name)
            if S.order > bound:
                continue
            for p in catalog.primes_dividing(S.order):
                try:
                    r = conjecture_scan(S, p, args.seed)
                except GroupError as err:
                    rows.append({"simple": e.name, "p": p, "error": str(err)})
                    break
                bad |= r.premise and not r.all_satisfy
                rows.append({"simple": e.name, "p": p, "premise": r.premise,
                             "overgroups": r.entries})
        human = _table([[r["simple"], r["p"], r.get("premise", "-"),
                         "; ".join(f"{o['order']}:{'ok' if o['satisfies'] else 'FAIL'}"
                                   for o in r.get("overgroups", [])) or r.get("error", "")]
                        for r in rows], ["S", "p", "S ok", "overgroups (order:verdict)"])
        _emit(args, {"scan": "conjecture", "seed": args.seed, "rows": rows}, human)
        return EXIT_VIOLATION if bad else EXIT_OK
    groups = catalog.groups(args.catalog, args.max_order or 10_000)
    rows = almost_simple_census(groups, args.seed)
    human = _table([[r["group"], r["order"], r["socle_order"],
                     ",".join(map(str, r["satisfied"])) or "-",
                     ",".join(map(str, r["violated"])) or "-",
                     "yes" if r["all_primes"] else "no"] for r in rows],
                   ["group", "|A|", "|S|", "DivSyl at", "fails at", "every p"])
    share = sum(len(r["satisfied"]) for r in rows), sum(len(r["satisfied"]) + len(r["violated"])
                                                       for r in rows)
    human += f"{share[0]} of {share[1]} (group, prime) pairs satisfy DivSyl(p)\n"
    _emit(args, {"scan": "problems", "seed": args.seed, "rows": rows}, human)
    return EXIT_OK


# -- entry point -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", dest="group", metavar="FILE",
                        help="group file, or a family / catalog name such as alt(5)")
    common.add_argument("-p", dest="prime", type=int, metavar="PRIME")
    common.add_argument("-o", dest="output", metavar="OUT.json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=("full", "sampled"), default="full")
    common.add_argument("--max-order", type=int, default=None)
    common.add_argument("--no-cache", action="store_true", help="skip the result cache")

    ap = argparse.ArgumentParser(prog="grp", description="Sylow numbers and DivSyl(p) checks "
                                 "for permutation groups.")
    ap.add_argument("--version", action="version", version=f"grp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("nu", parents=[common], help="count Sylow p-subgroups")
    sub.add_parser("divsyl", parents=[common], help="check nu_p(H) | nu_p(G) over all H")
    s = sub.add_parser("series", parents=[common], help="chief, composition or rc series")
    s.add_argument("--kind", choices=tuple(_SERIES), default="rc")
    c = sub.add_parser("construct", parents=[common], help="write a group file for a family")
    c.add_argument("family", help="e.g. alt(5), psl2(7), pgammal2(8)")
    sub.add_parser("embed", parents=[common], help="wreath embedding of a group with a "
                   "nonabelian minimal normal subgroup")
    v = sub.add_parser("verify", parents=[common], help="run a lemma over a catalog")
    v.add_argument("-l", dest="lemma", required=True, choices=list(LEMMAS) + ["all"])
    v.add_argument("--catalog", choices=tuple(catalog.CATALOGS), default="small")
    sc = sub.add_parser("scan", parents=[common], help="empirical tables")
    sc.add_argument("what", choices=("psl2", "conjecture", "problems"))
    sc.add_argument("--catalog", choices=tuple(catalog.CATALOGS), default="all")
    return ap


COMMANDS = {"nu": cmd_nu, "divsyl": cmd_divsyl, "series": cmd_series,
            "construct": cmd_construct, "embed": cmd_embed, "verify": cmd_verify,
            "scan": cmd_scan}


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    cache = None if args.no_cache else Cache()
    try:
        return COMMANDS[args.command](args, cache)
    except (UsageError, Inapplicable, TooLargeError, GroupError, PermutationError,
            ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"grp: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
