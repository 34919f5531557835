"""Generate the API reference pages and navigation."""

import ast
from pathlib import Path
from typing import Iterator

import mkdocs_gen_files

nav = mkdocs_gen_files.Nav()
nav["Home"] = "index.md"

root = Path(__file__).parent.parent
src = root / "superpy"

# Reference pages follow the layers of the library: arithmetic first, the
# command line last. Modules missing here are appended alphabetically.
SECTIONS = {
    "Arithmetic": ["scalars", "linalg"],
    "Algebras": ["algebra", "parsing", "catalog"],
    "Structure": ["structure", "dimension"],
    "Factorization": ["factorization", "superpoly"],
    "Checks": ["verification", "census"],
    "Command Line": ["cli"],
    "Errors": ["exceptions"],
}


def make_reference(m_name: str, member_names: list[str] | None = None) -> str:
    """Build one mkdocstrings directive."""
    lines = [f"::: superpy.{m_name}", "    options:"]
    if member_names is None:
        lines.append("        members: yes")
    elif member_names:
        lines.append("        members:")
        lines.extend(f"            - {m}" for m in member_names)
    else:
        lines.append("        members: []")
    return "\n".join(lines) + "\n"


def public_methods(node: ast.ClassDef) -> list[str]:
    return [
        child.name
        for child in node.body
        if isinstance(child, (ast.FunctionDef, ast.ClassDef)) and not child.name.startswith("_")
    ]


def declared_exports(tree: ast.Module) -> set[str] | None:
    """The names listed in `__all__`, or None if the module has none."""
    for node in tree.body:
        if isinstance(node, ast.Assign) and any(
            isinstance(t, ast.Name) and t.id == "__all__" for t in node.targets
        ):
            return {elt.value for elt in node.value.elts if isinstance(elt, ast.Constant)}
    return None


def iter_definitions(tree: ast.Module) -> Iterator[tuple[str, list[str] | None]]:
    """Yield (name, members) for each public top-level definition, in source order."""
    exports = declared_exports(tree)
    for node in tree.body:
        if isinstance(node, ast.ClassDef):
            name, members = node.name, public_methods(node)
        elif isinstance(node, ast.FunctionDef):
            name, members = node.name, None
        elif isinstance(node, ast.TypeAlias):
            name, members = node.name.id, None
        elif isinstance(node, ast.AnnAssign) and isinstance(node.target, ast.Name):
            name, members = node.target.id, None
        elif isinstance(node, ast.Assign) and isinstance(node.targets[0], ast.Name) and node.targets[0].id.isupper():
            name, members = node.targets[0].id, None
        else:
            continue
        if name.startswith("_") or (exports is not None and name not in exports):
            continue
        yield name, members


def ordered_modules() -> list[tuple[str, str]]:
    """(section, module) pairs for every public module of the package."""
    found = {path.stem for path in src.glob("*.py") if not path.stem.startswith("_")}
    ordered = [(section, m) for section, modules in SECTIONS.items() for m in modules if m in found]
    listed = {m for _, m in ordered}
    ordered.extend(("Other", m) for m in sorted(found - listed))
    return ordered


for section, module_name in ordered_modules():
    path = src / f"{module_name}.py"
    doc_path = Path("reference", f"{module_name}.md")
    title = module_name.replace("_", " ").title()
    nav["API Reference", section, title] = doc_path.as_posix()

    with mkdocs_gen_files.open(doc_path, "w") as f:
        f.write(f"# {title}\n\n")
        f.write(make_reference(module_name, []))
        try:
            tree = ast.parse(path.read_text(encoding="utf-8"))
        except (SyntaxError, UnicodeDecodeError):
            continue
        for name, members in iter_definitions(tree):
            f.write(make_reference(f"{module_name}.{name}", members))

    mkdocs_gen_files.set_edit_path(doc_path, path.relative_to(root))

with mkdocs_gen_files.open("SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
