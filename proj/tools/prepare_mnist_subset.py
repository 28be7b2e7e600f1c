#!/usr/bin/env python3
"""Extract the digit-3/6 subset of MNIST into gzipped IDX files.

Reads the standard IDX pairs (train-images-idx3-ubyte / train-labels-idx1-ubyte
and the t10k pair, raw or .gz) and writes the same format restricted to the
two digits the classifiers use. The output of this script is what ships under
data/mnist/.

Usage: prepare_mnist_subset.py <mnist-dir> <out-dir>
"""
import gzip
import os
import struct
import sys


def open_maybe_gz(path):
    for candidate in (path, path + ".gz"):
        if os.path.exists(candidate):
            return gzip.open(candidate, "rb") if candidate.endswith(".gz") else open(candidate, "rb")
    raise FileNotFoundError(path)


def read_pair(mnist_dir, images, labels):
    with open_maybe_gz(os.path.join(mnist_dir, images)) as f:
        magic, count, rows, cols = struct.unpack(">IIII", f.read(16))
        assert magic == 0x803, f"bad image magic in {images}"
        data = f.read(count * rows * cols)
    with open_maybe_gz(os.path.join(mnist_dir, labels)) as f:
        magic, lcount = struct.unpack(">II", f.read(8))
        assert magic == 0x801 and lcount == count, f"bad label file {labels}"
        lbl = f.read(count)
    return count, rows, cols, data, lbl


def write_subset(out_dir, name, rows, cols, images, labels):
    n = len(labels)
    with gzip.GzipFile(os.path.join(out_dir, f"{name}-images-idx3-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x803, n, rows, cols))
        for im in images:
            f.write(im)
    with gzip.GzipFile(os.path.join(out_dir, f"{name}-labels-idx1-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x801, n))
        f.write(bytes(labels))
    print(f"{name}: kept {n} images")


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    mnist_dir, out_dir = sys.argv[1], sys.argv[2]
    os.makedirs(out_dir, exist_ok=True)
    for name, images, labels in [
        ("train", "train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
        ("t10k", "t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
    ]:
        count, rows, cols, data, lbl = read_pair(mnist_dir, images, labels)
        px = rows * cols
        kept_images, kept_labels = [], []
        for i in range(count):
            if lbl[i] in (3, 6):
                kept_images.append(data[i * px : (i + 1) * px])
                kept_labels.append(lbl[i])
        write_subset(out_dir, name, rows, cols, kept_images, kept_labels)


if __name__ == "__main__":
    main()
