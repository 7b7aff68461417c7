#!/usr/bin/env python3
import logging
import shutil
from pathlib import Path

import yaml

# SETUP LOGGER
# --------------------------------------------------------------------------------------


logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

PACKAGE = "toruslab"
UPPERCASE_WORDS = {"cli": "CLI", "ply": "PLY", "svg": "SVG"}


# REFERENCE DOCUMENTATION GENERATION
# --------------------------------------------------------------------------------------


def format_module_title(module_name: str) -> str:
    """Format a module name into a title.

    Words listed in `UPPERCASE_WORDS` keep their acronym spelling, everything else is
    title-cased.

    Args:
        module_name: The module name to format (e.g., 'montiel_ros', 'cli')

    Returns:
        Formatted title (e.g., 'Montiel Ros', 'CLI')
    """
    words = module_name.split("_")
    return " ".join(UPPERCASE_WORDS.get(word, word.title()) for word in words)


def discover_package_structure(package_dir: Path) -> dict:
    """Recursively discover the modules and subpackages of a package.

    Args:
        package_dir: Path to the package directory

    Returns:
        Dictionary with 'files' (list of .py file stems) and 'subpackages' (nested dict)
    """
    structure: dict = {"files": [], "subpackages": {}}

    for py_file in package_dir.glob("*.py"):
        if py_file.name != "__init__.py":
            structure["files"].append(py_file.stem)

    for subdir in package_dir.iterdir():
        if subdir.is_dir() and (subdir / "__init__.py").exists():
            structure["subpackages"][subdir.name] = discover_package_structure(subdir)

    return structure


def module_page(title: str, module_path: str) -> str:
    return f"""# {title}

::: {module_path}
    options:
      show_root_heading: False
      show_source: true
      heading_level: 2
      show_root_toc_entry: False
"""


def generate_docs_recursive(
    docs_dir: Path, module_prefix: str, structure: dict
) -> None:
    """Write one mkdocstrings page per module, mirroring the package tree.

    Args:
        docs_dir: Path to the docs output directory for this package
        module_prefix: Python module prefix (e.g., 'toruslab.spectral')
        structure: Package structure dict from discover_package_structure
    """
    docs_dir.mkdir(parents=True, exist_ok=True)

    for file_stem in structure["files"]:
        page = module_page(format_module_title(file_stem), f"{module_prefix}.{file_stem}")
        (docs_dir / f"{file_stem}.md").write_text(page)

    for name, sub_structure in structure["subpackages"].items():
        generate_docs_recursive(docs_dir / name, f"{module_prefix}.{name}", sub_structure)


def build_nav_recursive(structure: dict, docs_prefix: str) -> list:
    """Build the mkdocs.yml navigation entries for a package structure.

    Args:
        structure: Package structure dict from discover_package_structure
        docs_prefix: Docs path prefix (e.g., 'reference/spectral')

    Returns:
        List of navigation items for mkdocs.yml
    """
    nav_items: list = []

    for file_stem in sorted(structure["files"]):
        nav_items.append({format_module_title(file_stem): f"{docs_prefix}/{file_stem}.md"})

    for name in sorted(structure["subpackages"]):
        sub_nav = build_nav_recursive(
            structure["subpackages"][name], f"{docs_prefix}/{name}"
        )
        if sub_nav:
            nav_items.append({format_module_title(name): sub_nav})

    return nav_items


def get_module_docstring(path: Path) -> str:
    """Extract the leading docstring of a module file, or an empty string."""
    if not path.exists():
        return ""
    content = path.read_text().strip()
    for quote in ('"""', "'''"):
        if content.startswith(quote):
            end = content.find(quote, 3)
            return content[3:end].strip() if end != -1 else ""
    return ""


def generate_reference_docs() -> None:
    """Generate reference documentation from docstrings via mkdocstrings.

    The steps are:

        1. Clean and recreate docs/reference
        2. Discover every module below src/toruslab
        3. Generate one page per module
        4. Create an overview page with navigation cards
        5. Replace the Reference section of the mkdocs.yml navigation

    Raises:
        FileNotFoundError: If not run from project root directory.
    """
    logger.info("Starting to generate reference documentation...")

    src_path = Path("src") / PACKAGE
    mkdocs_path = Path("mkdocs.yml")

    if not src_path.exists() or not mkdocs_path.exists():
        logger.error("Script must be run from the project root directory.")
        raise FileNotFoundError("Script must be run from the project root directory.")

    docs_path = Path("docs/reference")
    if docs_path.exists():
        shutil.rmtree(docs_path)
        logger.info("Cleaned existing documentation directory: %s", docs_path)
    docs_path.mkdir(parents=True, exist_ok=True)

    structure = discover_package_structure(src_path)
    logger.info(
        "Found %d modules and %d subpackages",
        len(structure["files"]),
        len(structure["subpackages"]),
    )

    generate_docs_recursive(docs_path, PACKAGE, structure)

    # OVERVIEW PAGE
    # ----------------------------------------------------------------------------------

    overview = "# Reference\n\n<div class=\"grid cards\" markdown>\n"
    entries = [(name, src_path / name / "__init__.py", f"{name}/") for name in structure["subpackages"]]
    entries += [(stem, src_path / f"{stem}.py", f"{stem}.md") for stem in structure["files"]]

    for name, source, target in sorted(entries):
        docstring = "\n    ".join(get_module_docstring(source).split("\n"))
        if target.endswith("/"):
            files = sorted(structure["subpackages"][name]["files"])
            if not files:
                continue
            target = f"{target}{files[0]}.md"
        overview += f"""
-   __{format_module_title(name)}__&nbsp;&nbsp;

    ---

    {docstring}

    [:material-link-variant: View `{name}` API]({target})
"""

    overview += "\n</div>\n"
    (docs_path / "overview.md").write_text(overview)
    logger.info("Generated %s", docs_path / "overview.md")

    # UPDATE mkdocs.yml NAVIGATION STRUCTURE
    # ----------------------------------------------------------------------------------

    with open(mkdocs_path) as f:
        config = yaml.unsafe_load(f)

    ref_nav: list = [{"Overview": "reference/overview.md"}]
    ref_nav.extend(build_nav_recursive(structure, "reference"))

    config["nav"] = [
        item
        for item in config["nav"]
        if not (isinstance(item, dict) and "Reference" in item)
    ]
    config["nav"].append({"Reference": ref_nav})

    with open(mkdocs_path, "w") as f:
        yaml.dump(config, f, default_flow_style=False, sort_keys=False)

    logger.info("Updated %s", mkdocs_path)


if __name__ == "__main__":
    generate_reference_docs()
