#!/usr/bin/env python3
# Copyright 2026 The hyperseg Authors
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
"""Convert a MATLAB scene (cube + ground truth) into the .npy files hyperseg reads.

    python3 tools/convert_mat.py SalinasA_corrected.mat SalinasA_gt.mat \
        --out-dir data --name salinasA

writes data/salinasA_cube.npy (H, W, L) and data/salinasA_gt.npy (H, W, int32).
The cube keeps its stored dtype (int16/uint16/float); hyperseg normalizes on load.
"""

import argparse
import pathlib
import sys

import numpy as np
import scipy.io


def load_array(path, key, ndim):
    try:
        mat = scipy.io.loadmat(path)
    except NotImplementedError:  # v7.3 files are HDF5
        import h5py

        with h5py.File(path, "r") as f:
            mat = {k: np.array(f[k]).T for k in f.keys()}
    if key is None:
        found = [k for k, v in mat.items()
                 if not k.startswith("__") and isinstance(v, np.ndarray) and v.ndim == ndim]
        if len(found) != 1:
            sys.exit(f"{path}: expected one {ndim}-D array, found {found}; pass --cube-key/--gt-key")
        key = found[0]
    if key not in mat:
        sys.exit(f"{path}: no variable '{key}'")
    arr = np.asarray(mat[key])
    if arr.ndim != ndim:
        sys.exit(f"{path}: '{key}' has shape {arr.shape}, expected {ndim} dimensions")
    return arr


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("cube_mat")
    ap.add_argument("gt_mat")
    ap.add_argument("--name", required=True, help="output stem, e.g. salinasA")
    ap.add_argument("--out-dir", default=".")
    ap.add_argument("--cube-key")
    ap.add_argument("--gt-key")
    args = ap.parse_args(argv)

    cube = load_array(args.cube_mat, args.cube_key, 3)
    gt = load_array(args.gt_mat, args.gt_key, 2)
    if cube.shape[:2] != gt.shape:
        sys.exit(f"shape mismatch: cube {cube.shape}, gt {gt.shape}")
    if gt.min() < 0:
        sys.exit("ground truth has negative labels")
    if cube.dtype not in (np.int16, np.uint16, np.int32, np.uint8, np.float32, np.float64):
        cube = cube.astype(np.float32)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    np.save(out / f"{args.name}_cube.npy", np.ascontiguousarray(cube))
    np.save(out / f"{args.name}_gt.npy", np.ascontiguousarray(gt.astype(np.int32)))
    print(f"{args.name}: cube {cube.shape} {cube.dtype}, "
          f"{len(np.unique(gt[gt > 0]))} classes")


if __name__ == "__main__":
    main()
