"""Involution Catalog

This script builds the catalog of every involution a set of families yields over one field,
verifies each entry exhaustively and writes the result as JSON, CSV or a markdown page.

Entries are sorted by (family, parameters, polynomial text), so two runs with the same arguments
produce identical bytes. The canonical section carries a SHA-256 digest; the optional generation
timestamp lives outside it.
"""

import csv
import hashlib
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

from analyzer import verify_claim
from constructors import FAMILY_ORDER, ConstructionRecipe, Family, construct, enumerate_recipes, family_applies, \
    parse_family
from errors import LimitExceeded, UnsupportedFamily
from ff_core import FieldElement, FieldSpec, find_smallest_generator
from utils import MISSING_VALUE_SYMBOL, TOOL_VERSION, fill_catalog_page, get_q_limit, load_template

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["family", "q", "g", "params", "poly", "involution", "fixed_points", "cycle_type", "oracle"]
PAGE_TEMPLATE_FILE = "catalog_page_template.md"
FORMATS = ("json", "csv", "md")


@dataclass(frozen=True)
class CatalogEntry:
    """One verified polynomial with the recipe it came from."""

    family: str
    q: int
    g: int
    params: Dict[str, Any]
    poly: str
    involution: bool
    fixed_points: int
    cycle_type: Dict[str, int]
    oracle: str
    passed: bool
    sort_key: Tuple

    def to_row(self) -> Dict[str, Any]:
        return {column: getattr(self, column) for column in CSV_COLUMNS}


@dataclass
class Catalog:
    """Sorted entries plus the provenance of the run."""

    field: FieldSpec
    generator: int
    families: List[str]
    entries: List[CatalogEntry]
    tool_version: str = TOOL_VERSION
    timestamp: Optional[str] = None

    @property
    def all_passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def failed_entries(self) -> List[CatalogEntry]:
        return [entry for entry in self.entries if not entry.passed]

    def canonical_section(self) -> Dict[str, Any]:
        return {
            "tool_version": self.tool_version,
            "field": self.field.describe(),
            "generator": self.generator,
            "families": self.families,
            "entries": [entry.to_row() for entry in self.entries],
        }

    def digest(self) -> str:
        """SHA-256 over the compact, key-sorted JSON of the canonical section."""
        canonical = json.dumps(self.canonical_section(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def to_json(self) -> Dict[str, Any]:
        document = {"canonical": self.canonical_section(), "digest": self.digest()}
        if self.timestamp is not None:
            document["generated_at"] = self.timestamp
        return document


def parse_families(text: str) -> List[Family]:
    """
        Parses a comma separated family list; "all" selects every family, "t3" both variants.

        @param text: The family list from the command line.

        @return: The families in catalog order without duplicates.
    """
    if text.strip().lower() == "all":
        return list(FAMILY_ORDER)

    selected = set()
    for name in text.split(","):
        name = name.strip().lower()
        if not name:
            continue
        if name == "t3":
            selected.update((Family.T3A, Family.T3B))
        else:
            selected.add(parse_family(name))

    if not selected:
        raise UnsupportedFamily("no family selected")
    return [family for family in FAMILY_ORDER if family in selected]


def _verify_recipe(recipe: ConstructionRecipe, q_limit: Optional[int]) -> CatalogEntry:
    poly = construct(recipe)
    report = verify_claim(recipe, poly, q_limit)
    row = report.to_json()
    return CatalogEntry(
        family=row["family"],
        q=row["q"],
        g=row["g"],
        params=row["params"],
        poly=row["poly"],
        involution=row["involution"],
        fixed_points=row["fixed_points"],
        cycle_type=row["cycle_type"],
        oracle=row["oracle"],
        passed=report.passed,
        sort_key=recipe.sort_key() + (row["poly"],),
    )


def build_catalog(field: FieldSpec, families: Sequence[Family], g: Optional[FieldElement] = None,
                  workers: int = 1, q_limit: Optional[int] = None, timestamp: bool = False) -> Catalog:
    """
        Constructs and verifies every recipe of the requested families over a field.

        @param field: The field.
        @param families: The families to enumerate; inapplicable ones are skipped with a warning.
        @param g: Optional generator, defaults to the smallest one.
        @param workers: Number of worker processes for verification.
        @param q_limit: Optional cap on q.
        @param timestamp: Record the generation time outside the canonical section.

        @return: The catalog with sorted entries.
    """
    q_limit = get_q_limit(q_limit)
    if field.q > q_limit:
        raise LimitExceeded(f"q = {field.q} exceeds the q-limit {q_limit}")
    if g is None:
        g = find_smallest_generator(field)

    logger.info("Catalog build started for %s with generator %d.", field, g.index)
    recipes = []
    included = []
    for family in families:
        if not family_applies(field, family):
            logger.warning("Skipping family %s: not applicable over %s.", family.value, field)
            continue
        family_recipes = enumerate_recipes(field, family, g)
        if not family_recipes:
            logger.warning("Skipping family %s: no admissible parameters over %s.", family.value, field)
            continue
        included.append(family.value)
        recipes.extend(family_recipes)

    if workers > 1 and len(recipes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            entries = list(executor.map(_verify_recipe, recipes, [q_limit] * len(recipes)))
    else:
        entries = [_verify_recipe(recipe, q_limit) for recipe in recipes]

    entries.sort(key=lambda entry: entry.sort_key)
    logger.info("Verified %d entries.", len(entries))

    generated_at = datetime.now().strftime("%Y-%m-%d %H:%M:%S") if timestamp else None
    return Catalog(field, g.index, included, entries, timestamp=generated_at)


# Writers

def _compact(value: Any) -> str:
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)


def render_json(catalog: Catalog) -> str:
    return json.dumps(catalog.to_json(), ensure_ascii=False, indent=4) + "\n"


def render_csv(catalog: Catalog) -> str:
    """
        Renders the entries as CSV with the fixed column order; params and cycle_type are
        compact JSON strings.

        @param catalog: The catalog.

        @return: The CSV text with LF line endings.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in catalog.entries:
        writer.writerow([
            entry.family,
            entry.q,
            entry.g,
            _compact(entry.params),
            entry.poly,
            "true" if entry.involution else "false",
            entry.fixed_points,
            _compact(entry.cycle_type),
            entry.oracle,
        ])
    return buffer.getvalue()


def _format_params(params: Dict[str, Any]) -> str:
    return ", ".join(f"{name}={value}" for name, value in params.items()) or "-"


def _format_cycle_type(cycle_type: Dict[str, int]) -> str:
    return " ".join(f"{length}^{count}" for length, count in sorted(cycle_type.items(), key=lambda item: int(item[0])))


def render_markdown(catalog: Catalog) -> str:
    """
        Renders the catalog as a markdown page from the page template.

        @param catalog: The catalog.

        @return: The markdown page.
    """
    page_template = load_template(PAGE_TEMPLATE_FILE)

    modulus = catalog.field.modulus
    info_rows = [
        ("Field", str(catalog.field)),
        ("Modulus", ", ".join(str(c) for c in modulus) if modulus is not None else None),
        ("Generator", str(catalog.generator)),
        ("Families", ", ".join(catalog.families) if catalog.families else None),
        ("Entries", str(len(catalog.entries))),
        ("Failed", str(len(catalog.failed_entries()))),
        ("Tool version", catalog.tool_version),
        ("Digest", catalog.digest()),
    ]
    catalog_info = "| Attribute | Content |\n|---|---|\n"
    for attribute, content in info_rows:
        catalog_info += f"| {attribute} | {content if content is not None else MISSING_VALUE_SYMBOL} |\n"

    entries = "| Family | Params | Polynomial | Involution | Fixed points | Cycle type | Oracle |\n"
    entries += "|---|---|---|---|---|---|---|\n"
    for entry in catalog.entries:
        entries += (f"| {entry.family} | {_format_params(entry.params)} | {entry.poly} | "
                    f"{'yes' if entry.involution else 'no'} | {entry.fixed_points} | "
                    f"{_format_cycle_type(entry.cycle_type)} | {entry.oracle} |\n")

    replacements = {
        "field": str(catalog.field),
        "date": catalog.timestamp,
        "catalog_info": catalog_info.rstrip("\n"),
        "entries": entries.rstrip("\n"),
    }
    return fill_catalog_page(page_template, replacements)


def render(catalog: Catalog, output_format: str) -> str:
    if output_format == "json":
        return render_json(catalog)
    if output_format == "csv":
        return render_csv(catalog)
    if output_format == "md":
        return render_markdown(catalog)
    raise ValueError(f"unknown catalog format `{output_format}`")


# Readers

def read_json_rows(text: str) -> List[Dict[str, Any]]:
    """Parses the entry rows back from a JSON catalog."""
    return json.loads(text)["canonical"]["entries"]


def read_csv_rows(text: str) -> List[Dict[str, Any]]:
    """
        Parses the entry rows back from a CSV catalog, restoring the JSON types.

        @param text: The CSV text.

        @return: Rows equal to the JSON rows of the same catalog.
    """
    rows = []
    for record in csv.DictReader(io.StringIO(text)):
        rows.append({
            "family": record["family"],
            "q": int(record["q"]),
            "g": int(record["g"]),
            "params": json.loads(record["params"]),
            "poly": record["poly"],
            "involution": record["involution"] == "true",
            "fixed_points": int(record["fixed_points"]),
            "cycle_type": json.loads(record["cycle_type"]),
            "oracle": record["oracle"],
        })
    return rows
