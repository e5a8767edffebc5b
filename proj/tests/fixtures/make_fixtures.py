#!/usr/bin/env python3
# Copyright 2026 The bevsim Authors
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
"""Writes the golden SEMGRIDv1 / SSDS / SSP1 byte fixtures and corrupted variants.

Built from the documented byte layouts only, with no code shared with the
C++ library. Rerun after a deliberate format change:

    python3 tests/fixtures/make_fixtures.py
"""

import pathlib
import struct
import zlib

HERE = pathlib.Path(__file__).resolve().parent

BEDROOM, LIVING, DOORWAY, WALL, ENTRANCE, OUTSIDE = 0, 1, 6, 7, 8, 9
NUM_CLASSES = 10

TINY_ROWS = [
    "........",
    ".######.",
    ".#bb#l#.",
    ".#bbdle.",
    ".#bb#l#.",
    ".#bb#l#.",
    ".######.",
    "........",
]
CHAR_CLASS = {"b": BEDROOM, "l": LIVING, "d": DOORWAY, "#": WALL, "e": ENTRANCE, ".": OUTSIDE}


def tiny():
    return [[CHAR_CLASS[ch] for ch in row] for row in TINY_ROWS]


def semgrid(grid, channels=NUM_CLASSES):
    h, w = len(grid), len(grid[0])
    return f"SEMGRIDv1 {h} {w} {channels}\n".encode() + bytes(v for row in grid for v in row)


def mask_grid(h, w, pred):
    return [[1 if pred(r, c) else 0 for c in range(w)] for r in range(h)]


# --- SSDS -----------------------------------------------------------------

def tiny_frame():
    gt = tiny()
    pose = (2, 2)
    explored = mask_grid(8, 8, lambda r, c: 1 <= r <= 6 and 1 <= c <= 3)
    return gt, pose, explored


def ssds_record(plan_id, step, query, gt, pose, explored):
    h, w = len(gt), len(gt[0])
    obstacle = lambda r, c: gt[r][c] in (WALL, OUTSIDE)
    layers = [
        mask_grid(h, w, lambda r, c: (r, c) == pose),
        mask_grid(h, w, lambda r, c: (r, c) == pose),
        mask_grid(h, w, lambda r, c: explored[r][c] and obstacle(r, c)),
        explored,
    ]
    for k in range(NUM_CLASSES):
        layers.append(mask_grid(h, w, lambda r, c, k=k: explored[r][c] and gt[r][c] == k))
    for k in range(NUM_CLASSES):
        layers.append(mask_grid(h, w, lambda r, c, k=k: not explored[r][c] and gt[r][c] == k))
    layers.append(mask_grid(h, w, lambda r, c: not explored[r][c] and gt[r][c] == query))
    layers.append(mask_grid(h, w, lambda r, c: not explored[r][c]))
    layers.append(gt)
    assert len(layers) == 27

    body = b"SREC" + struct.pack("<IIBiiI", plan_id, step, query, pose[0], pose[1], len(layers))
    for layer in layers:
        blob = semgrid(layer)
        body += struct.pack("<I", len(blob)) + blob
    return body + struct.pack("<I", zlib.crc32(body))


def ssds_file(records):
    """records: list of (plan_id, step, query, record_bytes)."""
    head = b"SSDS" + struct.pack("<HI", 1, len(records))
    offset = len(head) + 21 * len(records) + 4
    for plan_id, step, query, rec in records:
        head += struct.pack("<IIBQI", plan_id, step, query, offset, len(rec))
        offset += len(rec)
    head += struct.pack("<I", zlib.crc32(head))
    return head + b"".join(rec for *_, rec in records)


def with_crc(body):
    return body + struct.pack("<I", zlib.crc32(body))


# --- SSP1 -----------------------------------------------------------------

def ssp1_request(query, gt, pose, explored, version=1, msg_type=1):
    h, w = len(gt), len(gt[0])
    obstacle = lambda r, c: gt[r][c] in (WALL, OUTSIDE)
    planes = [
        mask_grid(h, w, lambda r, c: (r, c) == pose),
        mask_grid(h, w, lambda r, c: (r, c) == pose),
        mask_grid(h, w, lambda r, c: explored[r][c] and obstacle(r, c)),
        explored,
    ]
    for k in range(NUM_CLASSES):
        planes.append(mask_grid(h, w, lambda r, c, k=k: explored[r][c] and gt[r][c] == k))
    out = b"SSP1" + struct.pack("<HBBII", version, msg_type, query, h, w)
    for p in planes:
        out += bytes(v for row in p for v in row)
    return out


def response_value(k, r, c):
    # Dyadic fractions are exact in f32 and in double.
    return ((r * 3 + c * 5 + k * 7) % 17) / 16.0


def ssp1_response(h, w, channels=NUM_CLASSES, version=1, msg_type=2, override=None):
    out = b"SSP1" + struct.pack("<HBII", version, msg_type, h, w)
    for k in range(channels):
        for r in range(h):
            for c in range(w):
                v = response_value(k, r, c)
                if override and (k, r, c) == override[0]:
                    v = override[1]
                out += struct.pack("<f", v)
    return out


def main():
    files = {}

    grid = tiny()
    good = semgrid(grid)
    files["tiny_2r.semgrid"] = good
    files["semgrid_bad_magic.semgrid"] = b"SEMGRIDv0" + good[9:]
    files["semgrid_truncated.semgrid"] = good[:-5]
    files["semgrid_trailing.semgrid"] = good + b"\x00"
    bad_label = bytearray(good)
    bad_label[len(good) - 64 + 27] = 10
    files["semgrid_label_out_of_range.semgrid"] = bytes(bad_label)
    files["semgrid_overflow.semgrid"] = b"SEMGRIDv1 4294967296 8 10\n" + bytes(64)
    files["semgrid_bad_channels.semgrid"] = semgrid(grid, channels=11)

    gt, pose, explored = tiny_frame()
    rec_bed = ssds_record(0, 0, BEDROOM, gt, pose, explored)
    rec_liv = ssds_record(0, 0, LIVING, gt, pose, explored)
    records = [(0, 0, BEDROOM, rec_bed), (0, 0, LIVING, rec_liv)]
    ds = ssds_file(records)
    files["tiny_2r.ssds"] = ds
    files["ssds_bad_magic.ssds"] = b"SSDX" + ds[4:]
    files["ssds_bad_version.ssds"] = ds[:4] + struct.pack("<H", 2) + ds[6:]
    index_flip = bytearray(ds)
    index_flip[10] ^= 0x01  # plan_id of entry 0
    files["ssds_header_crc.ssds"] = bytes(index_flip)
    record_flip = bytearray(ds)
    record_flip[len(ds) - 40] ^= 0x01  # inside the gt layer of record 1
    files["ssds_record_crc.ssds"] = bytes(record_flip)
    files["ssds_truncated.ssds"] = ds[:-7]
    bad_tag = with_crc(b"SREX" + rec_liv[4:-4])
    files["ssds_bad_tag.ssds"] = ssds_file([records[0], (0, 0, LIVING, bad_tag)])

    files["request_tiny.ssp1"] = ssp1_request(BEDROOM, gt, pose, explored)
    files["request_bad_query.ssp1"] = ssp1_request(WALL, gt, pose, explored)
    files["request_short.ssp1"] = ssp1_request(BEDROOM, gt, pose, explored)[:-1]
    files["response_tiny.ssp1"] = ssp1_response(8, 8)
    files["response_bad_magic.ssp1"] = b"SSP0" + ssp1_response(8, 8)[4:]
    files["response_bad_version.ssp1"] = ssp1_response(8, 8, version=2)
    files["response_bad_type.ssp1"] = ssp1_response(8, 8, msg_type=1)
    files["response_eleven_channels.ssp1"] = ssp1_response(8, 8, channels=11)
    files["response_out_of_range.ssp1"] = ssp1_response(8, 8, override=((3, 2, 2), 1.5))

    for name, data in sorted(files.items()):
        (HERE / name).write_bytes(data)
        print(f"{name}: {len(data)} bytes crc32={zlib.crc32(data):08x}")


if __name__ == "__main__":
    main()
