#!/usr/bin/env python3
# Copyright 2026 The GIDN Authors.
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
"""Converts an already-downloaded ogbl-collab directory to gidn split files.

Input is the dataset directory OGB creates (it holds raw/ and split/time/):

    ogbl_collab/raw/num-node-list.csv.gz
    ogbl_collab/raw/node-feat.csv.gz
    ogbl_collab/split/time/{train,valid,test}.pt

Output directory layout, one "u<TAB>v" pair per line after a "# nodes=N"
header:

    train.tsv valid.tsv test.tsv valid_neg.tsv test_neg.tsv
    features.tsv   (with --features; one whitespace-separated row per node)

Repeated collaborations (same pair, different years) are written as-is; the
loader keeps one copy. The split .pt files need torch to read.

Example:
    python3 tools/ogb_collab_to_tsv.py --root ~/ogb/ogbl_collab \\
        --out data/ogbl_collab --features
"""

import argparse
import gzip
import os
import sys

import numpy as np


def read_num_nodes(root):
    path = os.path.join(root, "raw", "num-node-list.csv.gz")
    with gzip.open(path, "rt") as f:
        return int(f.readline().strip())


def load_split(root, name):
    import torch  # deferred: only the split files need it

    path = os.path.join(root, "split", "time", name + ".pt")
    split = torch.load(path, weights_only=False)
    pos = np.asarray(split["edge"], dtype=np.int64)
    neg = split.get("edge_neg")
    neg = None if neg is None else np.asarray(neg, dtype=np.int64)
    return pos, neg


def write_pairs(path, num_nodes, pairs):
    with open(path, "w") as f:
        f.write("# nodes=%d\n" % num_nodes)
        np.savetxt(f, pairs, fmt="%d", delimiter="\t")


def write_features(root, out_dir, num_nodes):
    src = os.path.join(root, "raw", "node-feat.csv.gz")
    feats = np.loadtxt(src, delimiter=",", dtype=np.float64)
    if feats.shape[0] != num_nodes:
        sys.exit("feature rows %d != nodes %d" % (feats.shape[0], num_nodes))
    np.savetxt(os.path.join(out_dir, "features.tsv"), feats, fmt="%.9g",
               delimiter="\t")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", required=True,
                        help="ogbl_collab dataset directory")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--features", action="store_true",
                        help="also write features.tsv (about 300 MB)")
    args = parser.parse_args()

    num_nodes = read_num_nodes(args.root)
    os.makedirs(args.out, exist_ok=True)
    for name in ("train", "valid", "test"):
        pos, neg = load_split(args.root, name)
        write_pairs(os.path.join(args.out, name + ".tsv"), num_nodes, pos)
        if neg is not None:
            write_pairs(os.path.join(args.out, name + "_neg.tsv"), num_nodes,
                        neg)
        print("%s: %d positives, %d negatives" %
              (name, len(pos), 0 if neg is None else len(neg)))
    if args.features:
        write_features(args.root, args.out, num_nodes)
    print("nodes=%d written to %s" % (num_nodes, args.out))


if __name__ == "__main__":
    main()
