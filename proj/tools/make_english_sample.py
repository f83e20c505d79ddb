#!/usr/bin/env python3
# Copyright 2026 The unitok Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the English test corpora from Python docstrings.

Each docstring paragraph that is mostly letters and spaces becomes one line,
with internal whitespace collapsed. The output depends only on the source
trees it is pointed at.

The small sample (tests/data/english_docs.txt) uses the CPython standard
library alone. The large sample adds the packages given with --package, skips
their test directories and drops repeated paragraphs:

    make_english_sample.py --output english_large.txt --dedup \
        --package .../numpy --package .../scipy ...
"""

import argparse
import ast
import pathlib


def paragraphs(root: pathlib.Path, skip_dirs):
    for path in sorted(root.rglob("*.py")):
        if skip_dirs & set(path.parts) or "site-packages" in str(path) or \
                "dist-packages" in str(path.relative_to(root)):
            continue
        try:
            tree = ast.parse(path.read_text(encoding="utf-8"))
        except Exception:
            continue
        for node in ast.walk(tree):
            if not isinstance(node, (ast.Module, ast.FunctionDef, ast.ClassDef,
                                     ast.AsyncFunctionDef)):
                continue
            doc = ast.get_docstring(node)
            if not doc:
                continue
            for para in doc.split("\n\n"):
                text = " ".join(para.split())
                letters = sum(c.isalpha() or c == " " for c in text)
                if len(text) > 40 and letters / len(text) > 0.9 and text.isascii():
                    yield text


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--root", default="/usr/lib/python3.10", type=pathlib.Path)
    parser.add_argument("--package", action="append", default=[], type=pathlib.Path,
                        help="extra package directory (repeatable)")
    parser.add_argument("--dedup", action="store_true", help="drop repeated paragraphs")
    parser.add_argument("--output", default="tests/data/english_docs.txt")
    args = parser.parse_args()
    lines = list(paragraphs(args.root, {"test"}))
    for package in args.package:
        lines.extend(paragraphs(package, {"test", "tests"}))
    if args.dedup:
        lines = list(dict.fromkeys(lines))
    text = "\n".join(lines) + "\n"
    pathlib.Path(args.output).write_text(text, encoding="utf-8")
    print(f"{len(text)} bytes, {len(lines)} lines")


if __name__ == "__main__":
    main()
