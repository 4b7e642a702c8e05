"""
rees-lab command-line interface

Modular structure:
- config.py: Environment and configuration
- models.py: Pydantic input and report models
- polycore.py, modpres.py, reescore.py, jacdual.py, bourbaki.py, verify.py: the algebra
- main.py: argument parsing, dispatch, report emission and exit codes

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 bad input,
3 a precondition failed or an assertion was skipped.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from config import APP_DESCRIPTION, APP_TITLE, APP_VERSION, DEFAULT_SEED, SYMBOLIC_VARIABLE_BUDGET
from errors import InputDocumentError, ReesLabError
from models import (
    AssertionRecord, AssertionStatusEnum, BourbakiModeEnum, CommandReport, InputDocument, Numerics, TheoremReport,
)
from jacdual import build_tower, colon_candidate, kpu_exponent, stabilize
from modpres import PresentationMatrix, rank_of_module
from reescore import (
    ReductionSpec, is_fiber_type, is_linear_type, is_reduction, rees_ideal, rees_ring, reduction_number,
)
from verify import (
    bourbaki_setup, compare_bourbaki_modes, fingerprints, verify_almost_linear_rees, verify_bourbaki_transfer,
    verify_dual_transfer, verify_fibercone_cm_transfer,
)
from utils import dumps_canonical, fingerprint, list_fixtures, load_input_document, load_manifest, setup_logging, write_json

logger = logging.getLogger(__name__)

VERIFY_TARGETS = ("almost-linear", "thm55", "bourbaki", "fiber-cone", "dual-transfer")

# ============ INPUT ============

def load_presentation(name: str) -> Tuple[PresentationMatrix, InputDocument, str]:
    """Presentation, its document and the document fingerprint"""
    _, doc = load_input_document(name)
    phi = PresentationMatrix.from_document(doc)
    if doc.rank is not None:
        computed = rank_of_module(phi).rank_e
        if computed != doc.rank:
            raise InputDocumentError(f"declared rank {doc.rank} differs from computed rank {computed}")
    canonical = dumps_canonical(doc.model_dump(mode="json", exclude={"description"}))
    return phi, doc, fingerprint([canonical])


def resolve_seed(args: argparse.Namespace, doc: InputDocument) -> int:
    """--seed, then the document seed, then REES_LAB_SEED"""
    if args.seed is not None:
        return args.seed
    return DEFAULT_SEED if doc.seed is None else doc.seed


def load_reduction(phi: PresentationMatrix, doc: InputDocument) -> Optional[ReductionSpec]:
    if not doc.reduction:
        return None
    fiber_ring = rees_ring(phi.ring, phi.n).without(phi.ring.names)
    try:
        return ReductionSpec.parse(fiber_ring, doc.reduction)
    except ValidationError as e:
        raise InputDocumentError("reduction must consist of T-linear forms", {"reduction": doc.reduction}) from e

# ============ REPORTS ============

def _records(report: TheoremReport) -> List[AssertionRecord]:
    return [AssertionRecord(name=a.name, passed=a.passed, status=a.status, witness=a.witness) for a in report.assertions]


def from_theorem(command: str, input_fingerprint: str, report: TheoremReport) -> CommandReport:
    numerics = {k: report.numerics.get(k) for k in ("dim", "depth_lb", "ell", "r")}
    details = dict(report.details)
    details.update({"theorem": report.theorem, "seed": report.seed, "fingerprints": report.fingerprints})
    return CommandReport(
        command=command, input_fingerprint=input_fingerprint, assertions=_records(report),
        ideals=report.ideals, numerics=Numerics(**numerics), details=details, verdict=report.verdict,
    )


def exit_code_for(report: CommandReport) -> int:
    statuses = {a.status for a in report.assertions}
    if AssertionStatusEnum.FAIL in statuses:
        return 1
    if AssertionStatusEnum.SKIPPED in statuses:
        return 3
    return 0


def render_text(report: CommandReport) -> str:
    lines = [f"== {report.command} ({report.input_fingerprint}) =="]
    for name, gens in report.ideals.items():
        lines.append(f"{name}:")
        lines.extend(f"  {g}" for g in gens or ["0"])
    for key, value in report.numerics.model_dump().items():
        if value is not None:
            lines.append(f"{key}: {value}")
    for key in sorted(report.details):
        value = report.details[key]
        if isinstance(value, (bool, int, str)):
            lines.append(f"{key.replace('_', ' ')}: {str(value).lower() if isinstance(value, bool) else value}")
    for a in report.assertions:
        glyph = {"pass": "✅", "fail": "❌", "skipped": "⚠️"}[a.status.value]
        lines.append(f"{glyph} {a.name}: {a.status.value}")
    if report.assertions:
        lines.append(f"verdict: {'pass' if report.verdict else 'fail'}")
    return "\n".join(lines) + "\n"

# ============ COMMANDS ============

def cmd_rees(args: argparse.Namespace) -> CommandReport:
    phi, _, fp = load_presentation(args.file)
    rd = rees_ideal(phi)
    linear = is_linear_type(rd)
    return CommandReport(
        command="rees", input_fingerprint=fp,
        ideals={"L": rd.L.dump(), "J": rd.J.dump()},
        numerics=Numerics(dim=rd.dim_rees, ell=rd.ell),
        details={
            "rank": rd.rank_e, "linear_type": linear, "fiber_type": is_fiber_type(rd),
            "saturating_element": str(rd.c), "fingerprints": fingerprints(L=rd.L, J=rd.J),
        },
    )


def cmd_fiber(args: argparse.Namespace) -> CommandReport:
    phi, doc, fp = load_presentation(args.file)
    rd = rees_ideal(phi)
    report = TheoremReport(theorem="fiber")
    r = None
    U = load_reduction(phi, doc)
    if U is not None:
        ok = is_reduction(rd, U)
        report.add("U is a reduction", ok, U=U.dump())
        if ok:
            r = reduction_number(rd, U)
    command = from_theorem("fiber", fp, report)
    command.ideals = {"I_fib": rd.I_fib.dump()}
    command.numerics = Numerics(ell=rd.ell, r=r)
    command.details.update({"fingerprints": fingerprints(I_fib=rd.I_fib)})
    return command


def cmd_bourbaki(args: argparse.Namespace) -> CommandReport:
    phi, doc, fp = load_presentation(args.file)
    seed = resolve_seed(args, doc)
    if args.mode == BourbakiModeEnum.SYMBOLIC.value:
        return from_theorem("bourbaki", fp, compare_bourbaki_modes(phi, seed, args.budget))
    ctx, rd_E, rd_I, invariants, U = bourbaki_setup(phi, seed, load_reduction(phi, doc))
    command = from_theorem("bourbaki", fp, invariants)
    command.ideals = {"I": ctx.I.dump()}
    command.details.update({"context": ctx.summary(), "U": U.dump()})
    return command


def cmd_jacdual(args: argparse.Namespace) -> CommandReport:
    phi, _, fp = load_presentation(args.file)
    if args.levels is not None:
        tower = build_tower(phi, args.levels)
    else:
        tower = stabilize(phi)
    ideals: Dict[str, List[str]] = {
        f"chain_{i + 1}": I.dump() for i, I in enumerate(tower.ideal_chain)
    }
    if args.colon is not None:
        ideals[f"colon_{args.colon}"] = colon_candidate(phi, args.colon, tower.ring).dump()
    return CommandReport(
        command="jacdual", input_fingerprint=fp, ideals=ideals,
        details={
            "B": tower.dump_matrix(1),
            "levels": len(tower.levels),
            "stabilized_at": tower.stabilized_at,
            "kpu_exponent": kpu_exponent(phi),
        },
    )


def cmd_verify(args: argparse.Namespace) -> CommandReport:
    phi, doc, fp = load_presentation(args.file)
    seed = resolve_seed(args, doc)
    target = args.target
    if target in ("almost-linear", "thm55"):
        report = verify_almost_linear_rees(phi, seed)
    elif target == "bourbaki":
        report = verify_bourbaki_transfer(phi, seed, load_reduction(phi, doc))
    elif target == "fiber-cone":
        report = verify_fibercone_cm_transfer(phi, seed, load_reduction(phi, doc))
    else:
        report = verify_dual_transfer(phi, seed)
    return from_theorem(f"verify {target}", fp, report)


def cmd_fixtures(args: argparse.Namespace) -> CommandReport:
    manifest = load_manifest()
    entries = []
    for path in list_fixtures():
        expected = manifest.get(path.stem, {})
        entries.append({"name": path.stem, "file": path.name, "description": expected.get("description", "")})
    return CommandReport(
        command="fixtures", input_fingerprint=fingerprint(e["name"] for e in entries),
        details={"fixtures": entries},
    )

# ============ ENTRY POINT ============

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="OUT", help="write the machine-readable report to OUT")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized steps (default: REES_LAB_SEED)")
    common.add_argument("--log-level", default=None, help="logging level for stderr")

    parser = argparse.ArgumentParser(prog=APP_TITLE, description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"{APP_TITLE} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("rees", "symmetric and Rees ideals"), ("fiber", "fiber cone ideal and analytic spread")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")

    p = sub.add_parser("bourbaki", parents=[common], help="generic Bourbaki ideal and its invariants")
    p.add_argument("file")
    p.add_argument("--mode", choices=[m.value for m in BourbakiModeEnum], default=BourbakiModeEnum.RANDOMIZED.value)
    p.add_argument("--budget", type=int, default=SYMBOLIC_VARIABLE_BUDGET, help="coefficient variables allowed in symbolic mode")

    p = sub.add_parser("jacdual", parents=[common], help="Jacobian dual tower")
    p.add_argument("file")
    p.add_argument("--levels", type=int, default=None, help="build exactly this many levels")
    p.add_argument("--colon", type=int, default=None, metavar="M", help="also print (Y.B) : (Y)^M")

    p = sub.add_parser("verify", parents=[common], help="theorem reports")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("file")

    sub.add_parser("fixtures", parents=[common], help="list the built-in fixtures")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    setup_logging(args.log_level)
    try:
        if args.command == "rees":
            report = cmd_rees(args)
        elif args.command == "fiber":
            report = cmd_fiber(args)
        elif args.command == "bourbaki":
            report = cmd_bourbaki(args)
        elif args.command == "jacdual":
            report = cmd_jacdual(args)
        elif args.command == "verify":
            report = cmd_verify(args)
        else:
            report = cmd_fixtures(args)
    except ReesLabError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    sys.stdout.write(render_text(report))
    if args.json:
        try:
            write_json(args.json, report.model_dump(mode="json", by_alias=True))
        except ReesLabError as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            return e.exit_code
    code = exit_code_for(report)
    logger.info(f"{'✅' if code == 0 else '❌'} {report.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(run())
