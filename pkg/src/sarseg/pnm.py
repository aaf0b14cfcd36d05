"""Binary PGM/PPM reading and writing, with optional PNG input through Pillow.

Only the raw formats are written: P5 (gray, 8 or 16 bit, big-endian) and
P6 (RGB, 8 bit). The reader also accepts plain P2 and converts P6 to gray.
"""

import numpy as np

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


class PnmError(OSError):
    """Malformed or unsupported image file."""


def _tokens(data, count, pos):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PnmError("truncated header")
        out.append(data[start:pos])
    return out, pos


def parse_pnm(data):
    """Decode PNM bytes to ``(array, maxval)``.

    Gray images come back with shape (height, width), colour images with
    shape (height, width, 3). Samples keep their integer values.
    """
    magic = data[:2]
    if magic not in (b"P2", b"P5", b"P6"):
        raise PnmError(f"unsupported magic number {magic!r}")
    try:
        (w, h, maxval), pos = _tokens(data, 3, 2)
        w, h, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise PnmError(f"bad header: {exc}") from None
    if w < 1 or h < 1 or not 0 < maxval < 65536:
        raise PnmError(f"bad dimensions or maxval: {w}x{h}, {maxval}")
    channels = 3 if magic == b"P6" else 1
    count = w * h * channels
    if magic == b"P2":
        vals, _ = _tokens(data, count, pos)
        arr = np.array([int(v) for v in vals], dtype=np.int64)
    else:
        pos += 1  # exactly one whitespace byte ends the header
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
        need = count * dtype.itemsize
        if len(data) - pos < need:
            raise PnmError(f"expected {need} bytes of samples, found {len(data) - pos}")
        arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos).astype(np.int64)
    if arr.max(initial=0) > maxval:
        raise PnmError("sample exceeds maxval")
    shape = (h, w, 3) if channels == 3 else (h, w)
    return arr.reshape(shape), maxval


def _read_png(path):
    try:
        from PIL import Image
    except ImportError:
        raise PnmError("PNG input needs Pillow (pip install Pillow)") from None
    with Image.open(path) as im:
        if im.mode in ("I;16", "I;16B", "I"):
            arr = np.asarray(im, dtype=np.int64)
            return arr, 65535
        return np.asarray(im.convert("L"), dtype=np.int64), 255


def read_raw(path):
    """Read a PGM/PPM/PNG file to ``(integer samples, maxval)``."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(PNG_SIGNATURE):
        return _read_png(path)
    return parse_pnm(data)


def read_image(path):
    """Read an image as a float field with values in (0, 255].

    Colour input is averaged to gray. Zero samples are raised to 1 before
    scaling by ``255 / maxval``, so the result is strictly positive.
    """
    arr, maxval = read_raw(path)
    if arr.ndim == 3:
        arr = arr.sum(axis=2) / 3.0
    return np.maximum(arr, 1).astype(np.float64) * (255.0 / maxval)


def read_mask(path):
    """Read a binary mask: every non-zero sample is foreground."""
    arr, _ = read_raw(path)
    if arr.ndim == 3:
        arr = arr.max(axis=2)
    return arr != 0


def encode_pgm(arr, maxval=None):
    """Encode a 2-D integer array as P5 bytes (16 bit when ``maxval > 255``)."""
    a = np.asarray(arr)
    if a.ndim != 2:
        raise ValueError(f"PGM needs a 2-D array, got shape {a.shape}")
    if maxval is None:
        maxval = 65535 if a.dtype == np.uint16 else 255
    if a.size and (a.min() < 0 or a.max() > maxval):
        raise ValueError(f"samples must lie in [0, {maxval}]")
    dtype = ">u2" if maxval > 255 else np.uint8
    h, w = a.shape
    return f"P5\n{w} {h}\n{maxval}\n".encode("ascii") + a.astype(dtype).tobytes()


def encode_ppm(rgb):
    a = np.asarray(rgb)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError(f"PPM needs shape (h, w, 3), got {a.shape}")
    h, w, _ = a.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + a.astype(np.uint8).tobytes()


def write_pgm(path, arr, maxval=None):
    with open(path, "wb") as fh:
        fh.write(encode_pgm(arr, maxval))


def write_ppm(path, rgb):
    with open(path, "wb") as fh:
        fh.write(encode_ppm(rgb))


def to_uint8(u, lo=None, hi=None):
    """Linearly map ``[lo, hi]`` (default: data range) onto 0..255."""
    u = np.asarray(u, dtype=np.float64)
    lo = u.min() if lo is None else lo
    hi = u.max() if hi is None else hi
    if hi <= lo:
        return np.zeros(u.shape, dtype=np.uint8)
    return np.rint(np.clip((u - lo) / (hi - lo), 0.0, 1.0) * 255.0).astype(np.uint8)


def mask_boundary(mask):
    """Foreground pixels with at least one 4-neighbour in the background."""
    m = np.asarray(mask, dtype=bool)
    p = np.pad(m, 1, mode="edge")
    interior = p[:-2, 1:-1] & p[2:, 1:-1] & p[1:-1, :-2] & p[1:-1, 2:]
    return m & ~interior


def overlay(gray, mask, color=(255, 0, 0)):
    """RGB image of ``gray`` (uint8) with the mask outline painted in ``color``."""
    g = np.asarray(gray, dtype=np.uint8)
    rgb = np.repeat(g[:, :, None], 3, axis=2)
    rgb[mask_boundary(mask)] = color
    return rgb


def save_matrix(path, u):
    """Plain-text matrix, one row per line, round-trippable decimals."""
    np.savetxt(path, np.asarray(u, dtype=np.float64), fmt="%.17g")
