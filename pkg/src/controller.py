"""Controller

Command line front end of invforge. Every command selects a field with --q / --p / --ext-deg /
--modulus and prints its result on standard output; progress and diagnostics go to standard error.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

    * python3 src/controller.py construct --q 41 --family t1 --i 0 --generator 6
    * python3 src/controller.py verify --q 41 --poly "26x^31 + 29x^11 + 22x" --expect-involution
    * python3 src/controller.py catalog --q 41 --families t1,t2,t3a,t3b --format csv --out catalog.csv
    * python3 src/controller.py oracle-diff --q 7 --family h1 --d 2 --oracle-family h2
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from analyzer import behavior_oracle, first_mismatch, oracle_is_constructive, permutation_map, verify_claim
from catalog import FORMATS, Catalog, build_catalog, parse_families, render
from constructors import ConstructionRecipe, construct, make_recipe, parse_family
from errors import InvForgeError, NotAGenerator, OutputError
from ff_core import FieldElement, FieldSpec, make_field, parse_modulus
from sparse_poly import format_poly, parse
from utils import ensure_folder_exists, save_state_to_json_file, setup_logging

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger("invforge")


def extract_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """ Extract and return the command line arguments using argparse. """
    field_parser = argparse.ArgumentParser(add_help=False)
    field_parser.add_argument('--q', type=int, help='Field order, a prime or a prime power.')
    field_parser.add_argument('--p', type=int, help='Field characteristic.')
    field_parser.add_argument('--ext-deg', type=int, help='Extension degree over the prime field.')
    field_parser.add_argument('--modulus', help='Ascending modulus coefficients, comma separated (e.g. 1,1,0,0,1).')
    field_parser.add_argument('--q-limit', type=int, help='Cap on q for exhaustive verification.')

    recipe_parser = argparse.ArgumentParser(add_help=False)
    recipe_parser.add_argument('--family', required=True, help='Family: t1, t2, t3 (with --variant), t3a, t3b, h1, h2, t7, t8.')
    recipe_parser.add_argument('--variant', help='Variant a or b of t3.')
    recipe_parser.add_argument('--i', type=int, help='Index i for t1, t2, t3a, t3b.')
    recipe_parser.add_argument('--d', type=int, help='Divisor d of q - 1 for h1, h2.')
    recipe_parser.add_argument('--m', type=int, help='Odd cofactor m for t7, t8.')
    recipe_parser.add_argument('--n', type=int, help='Even cofactor n for t7, t8.')
    recipe_parser.add_argument('--generator', type=int, help='Generator as an element index; defaults to the smallest.')
    recipe_parser.add_argument('--printed', action='store_true', help='Use the t8 formula exactly as printed.')

    parser = argparse.ArgumentParser(prog='invforge', description='Construct and verify involutions over finite fields.')
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('construct', parents=[field_parser, recipe_parser], help='Print the polynomial of a recipe.')

    verify = commands.add_parser('verify', parents=[field_parser], help='Verify a polynomial exhaustively.')
    verify.add_argument('--poly', required=True, help='Polynomial text, e.g. "26x^31 + 29x^11 + 22x".')
    verify.add_argument('--expect-involution', action='store_true', help='Require an involution.')
    verify.add_argument('--expect-fixed', type=int, help='Required number of fixed points.')

    catalog = commands.add_parser('catalog', parents=[field_parser], help='Build the catalog of a field.')
    catalog.add_argument('--families', default='all', help='Comma separated families or "all".')
    catalog.add_argument('--format', choices=FORMATS, default='json', help='Output format.')
    catalog.add_argument('--out', help='Output file; standard output when omitted.')
    catalog.add_argument('--generator', type=int, help='Generator as an element index; defaults to the smallest.')
    catalog.add_argument('--workers', type=int, default=1, help='Worker processes for verification.')
    catalog.add_argument('--timestamp', action='store_true', help='Record the generation time.')

    oracle_diff = commands.add_parser('oracle-diff', parents=[field_parser, recipe_parser],
                                      help='Compare a polynomial map with the behaviour oracle.')
    oracle_diff.add_argument('--oracle-family', help='Take the oracle from another family (negative control).')

    return parser.parse_args(argv)


def field_from_args(args: argparse.Namespace) -> FieldSpec:
    modulus = parse_modulus(args.modulus) if args.modulus else None
    return make_field(q=args.q, p=args.p, ext_deg=args.ext_deg, modulus=modulus)


def generator_from_args(field: FieldSpec, index: Optional[int]) -> Optional[FieldElement]:
    if index is None:
        return None
    if not 0 < index < field.q:
        raise NotAGenerator(f"{index} is not an element of {field}")
    return FieldElement(field, index)


def recipe_from_args(args: argparse.Namespace, field: FieldSpec, family_name: str) -> ConstructionRecipe:
    family = parse_family(family_name, args.variant)
    return make_recipe(family, field, generator_from_args(field, args.generator), i=args.i, d=args.d,
                       m=args.m, n=args.n, printed=args.printed)


def write_output(catalog: Catalog, output_format: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(render(catalog, output_format))
        return

    try:
        if output_format == "json":
            save_state_to_json_file(catalog.to_json(), out)
        else:
            ensure_folder_exists(out)
            with open(out, "w", encoding="utf-8", newline="\n") as output_file:
                output_file.write(render(catalog, output_format))
    except OSError as e:
        raise OutputError(f"cannot write `{out}`: {e.strerror or e}")
    logger.info("Saved catalog to %s.", out)


def cmd_construct(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    recipe = recipe_from_args(args, field, args.family)
    poly = construct(recipe)

    print(format_poly(poly))
    print(json.dumps(recipe.to_json(), ensure_ascii=False))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    poly = parse(args.poly, field)
    report = verify_claim(None, poly, args.q_limit)
    print(json.dumps(report.to_json(), ensure_ascii=False))

    # Without expectations the polynomial must still permute the field
    holds = report.is_involution if args.expect_involution else report.is_permutation
    if args.expect_fixed is not None and report.fixed_point_count != args.expect_fixed:
        logger.error("Expected %d fixed points, found %d.", args.expect_fixed, report.fixed_point_count)
        holds = False
    if not holds:
        logger.error("Verification failed for %s over %s.", format_poly(poly), field)
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    families = parse_families(args.families)
    catalog = build_catalog(field, families, generator_from_args(field, args.generator), workers=args.workers,
                            q_limit=args.q_limit, timestamp=args.timestamp)

    write_output(catalog, args.format, args.out)

    failed = catalog.failed_entries()
    if failed:
        for entry in failed:
            logger.error("Entry failed verification: %s %s %s", entry.family, entry.params, entry.poly)
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_oracle_diff(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    recipe = recipe_from_args(args, field, args.family)
    oracle_recipe = recipe_from_args(args, field, args.oracle_family) if args.oracle_family else recipe

    if not oracle_is_constructive(oracle_recipe):
        print("descriptive")
        return EXIT_OK

    poly_map = permutation_map(construct(recipe), args.q_limit)
    oracle_map = behavior_oracle(oracle_recipe, args.q_limit)
    mismatch = first_mismatch(poly_map, oracle_map)
    if mismatch is None:
        print("match")
        return EXIT_OK

    print(f"mismatch at {mismatch}: polynomial gives {poly_map(mismatch)}, oracle gives {oracle_map(mismatch)}")
    return EXIT_VERIFICATION_FAILED


COMMANDS = {
    'construct': cmd_construct,
    'verify': cmd_verify,
    'catalog': cmd_catalog,
    'oracle-diff': cmd_oracle_diff,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = extract_args(argv)

    try:
        setup_logging()
        return COMMANDS[args.command](args)
    except InvForgeError as e:
        print(f"error: {e.diagnostic()}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {OutputError(str(e)).diagnostic()}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
