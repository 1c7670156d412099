"""OBJ and binary PLY export of triangle meshes.

Coordinates are printed with 17 significant digits, which round-trips every
IEEE double exactly.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .surface import TriangleMesh

__all__ = ["write_obj", "read_obj", "write_ply", "read_ply", "write_mesh"]


def write_obj(mesh: TriangleMesh, path, normals: bool = True) -> None:
    """``v`` lines, optional ``vn`` lines, then 1-based ``f`` lines."""
    with open(path, "w", encoding="ascii") as fh:
        fam = mesh.provenance.get("family", "")
        fh.write("# minsurf %s %s\n" % (fam, " ".join("%s=%r" % kv for kv in sorted(mesh.provenance.items())
                                                     if kv[0] != "family")))
        for x, y, z in mesh.vertices:
            fh.write("v %.17g %.17g %.17g\n" % (x, y, z))
        if normals:
            for x, y, z in mesh.normals:
                fh.write("vn %.17g %.17g %.17g\n" % (x, y, z))
            for a, b, c in mesh.faces + 1:
                fh.write("f %d//%d %d//%d %d//%d\n" % (a, a, b, b, c, c))
        else:
            for a, b, c in mesh.faces + 1:
                fh.write("f %d %d %d\n" % (a, b, c))


def read_obj(path) -> TriangleMesh:
    """Parse ``v``, ``vn`` and triangular ``f`` records."""
    v, vn, f = [], [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                v.append([float(s) for s in parts[1:4]])
            elif parts[0] == "vn":
                vn.append([float(s) for s in parts[1:4]])
            elif parts[0] == "f":
                f.append([int(s.split("/")[0]) - 1 for s in parts[1:4]])
    v = np.array(v, dtype=float).reshape(-1, 3)
    normals = np.array(vn, dtype=float).reshape(-1, 3) if vn else np.zeros_like(v)
    return TriangleMesh(v, np.array(f, dtype=np.int64).reshape(-1, 3), normals)


def write_ply(mesh: TriangleMesh, path) -> None:
    """Binary little-endian PLY with double positions and normals."""
    n, m = len(mesh.vertices), len(mesh.faces)
    header = (
        "ply\nformat binary_little_endian 1.0\n"
        "element vertex %d\n"
        "property double x\nproperty double y\nproperty double z\n"
        "property double nx\nproperty double ny\nproperty double nz\n"
        "element face %d\nproperty list uchar int vertex_indices\nend_header\n" % (n, m)
    )
    vdata = np.hstack([mesh.vertices, mesh.normals]).astype("<f8")
    fdata = np.empty(m, dtype=[("n", "u1"), ("idx", "<i4", (3,))])
    fdata["n"] = 3
    fdata["idx"] = mesh.faces
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(vdata.tobytes())
        fh.write(fdata.tobytes())


def read_ply(path) -> TriangleMesh:
    """Read files written by :func:`write_ply`."""
    data = Path(path).read_bytes()
    end = data.index(b"end_header\n") + len(b"end_header\n")
    header = data[:end].decode("ascii").splitlines()
    if "format binary_little_endian 1.0" not in header:
        raise ValueError("only binary little-endian PLY is supported")
    n = m = 0
    for line in header:
        if line.startswith("element vertex"):
            n = int(line.split()[2])
        elif line.startswith("element face"):
            m = int(line.split()[2])
    v = np.frombuffer(data, dtype="<f8", count=6 * n, offset=end).reshape(n, 6)
    (fsize,) = struct.unpack("<B", data[end + 48 * n:end + 48 * n + 1]) if m else (3,)
    if fsize != 3:
        raise ValueError("only triangles are supported")
    f = np.frombuffer(data, dtype=[("n", "u1"), ("idx", "<i4", (3,))], count=m, offset=end + 48 * n)
    return TriangleMesh(v[:, :3].copy(), f["idx"].astype(np.int64), v[:, 3:].copy())


def write_mesh(mesh: TriangleMesh, path, normals: bool = True) -> None:
    """Dispatch on the file extension (``.ply`` or OBJ otherwise)."""
    if str(path).lower().endswith(".ply"):
        write_ply(mesh, path)
    else:
        write_obj(mesh, path, normals)
