#!/usr/bin/env python3
"""Writes the level, rules and calibration fixtures under data/.

The token files are curated stand-ins: the 1-2 style underground level has 32
features over 157 columns, the obby has 32 features over 288 elements with a
save point every 16 elements and six distinct features between saves.

Also prints the expected unigram originality of the 1-2 level at L = 5,
    E[rate] = 1 - sum over distinct original 5-grams g of prod_i freq(g_i),
which the baseline tests freeze.
"""

import itertools
import math
import pathlib
import sys

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

SMB_VOCAB = [
    "floor", "floor_ceiling", "gap", "brick_low", "brick_high", "question", "coin_block", "goomba",
    "koopa", "pipe_left", "pipe_right", "tall_pipe_left", "tall_pipe_right", "step_1", "step_2", "step_3",
    "step_4", "brick_wall", "coins_over_floor", "coin_room_floor", "brick_pillar", "brick_tunnel",
    "lift_up", "lift_down", "platform_gap", "star_brick", "mushroom_question", "piranha_pipe_left",
    "piranha_pipe_right", "warp_pipe_left", "warp_pipe_right", "exit_pipe_top",
]

ABBREV = {
    "F": "floor", "FC": "floor_ceiling", "G": "gap", "BL": "brick_low", "BH": "brick_high", "Q": "question",
    "CB": "coin_block", "GO": "goomba", "KO": "koopa", "PL": "pipe_left", "PR": "pipe_right",
    "TL": "tall_pipe_left", "TR": "tall_pipe_right", "S1": "step_1", "S2": "step_2", "S3": "step_3",
    "S4": "step_4", "BW": "brick_wall", "CO": "coins_over_floor", "CR": "coin_room_floor",
    "BP": "brick_pillar", "BT": "brick_tunnel", "LU": "lift_up", "LD": "lift_down", "PG": "platform_gap",
    "SB": "star_brick", "MQ": "mushroom_question", "XL": "piranha_pipe_left", "XR": "piranha_pipe_right",
    "WL": "warp_pipe_left", "WR": "warp_pipe_right", "EX": "exit_pipe_top",
}

SMB_SEGMENTS = [
    "F F F F F S1 S2 S3 S4",
    "FC FC MQ FC Q Q FC FC",
    "FC GO FC GO FC BL BL FC",
    "S1 S2 S3 S4 S4 FC FC",
    "BH BH CB BH FC KO FC FC",
    "BP BP FC CO CO CO FC",
    "BT BT BT SB BT BT FC",
    "FC PL PR FC FC TL TR FC",
    "FC GO GO FC XL XR FC",
    "BW CR CR CO CO CR CR CO CO CR CR BW",
    "FC FC PL PR FC GO FC",
    "G PG PG G FC FC",
    "BH BH BH CB BH BH FC",
    "TL TR FC FC XL XR FC",
    "KO FC FC BL BL BL FC",
    "LU LU G LD LD G LU LD",
    "F F S1 S2 S3 S4 S4 G",
    "F F F PL PR F F",
    "BW CR CO CO CR BW",
    "F WL WR F WL WR F WL WR F EX F F",
]

SMB_RULES = [
    ("pipe_left", "pipe_right"),
    ("tall_pipe_left", "tall_pipe_right"),
    ("piranha_pipe_left", "piranha_pipe_right"),
    ("warp_pipe_left", "warp_pipe_right"),
]

OBBY_VOCAB = [
    "save_point", "platform", "tilted_platform", "rotating_platform", "gap_jump", "spinner", "lava_floor",
    "moving_platform", "truss_climb", "wall_jump", "conveyor", "kill_brick", "jump_pad", "narrow_beam",
    "ladder", "swinging_axe", "vanishing_platform", "ice_platform", "trampoline", "zipline", "button",
    "hiding_spot", "rolling_ball", "spike_trap", "wedge", "bridge", "pendulum", "fan_lift", "laser_gate",
    "bounce_pad", "stairs", "finish_pad",
]

OBBY_TEMPLATES = {
    "A": "platform platform button platform platform platform hiding_spot rolling_ball platform "
         "tilted_platform tilted_platform platform gap_jump platform platform",
    "B": "platform rotating_platform rotating_platform gap_jump rotating_platform spinner platform spinner "
         "gap_jump platform lava_floor platform rotating_platform lava_floor moving_platform",
    "C": "truss_climb truss_climb wall_jump wall_jump platform conveyor conveyor kill_brick conveyor platform "
         "jump_pad platform wall_jump truss_climb platform",
    "D": "narrow_beam narrow_beam ladder platform swinging_axe narrow_beam swinging_axe platform "
         "vanishing_platform vanishing_platform ice_platform ice_platform platform narrow_beam platform",
    "E": "trampoline platform zipline zipline platform spike_trap platform trampoline wedge wedge platform "
         "spike_trap trampoline bridge platform",
    "F": "bridge bridge pendulum bounce_pad pendulum fan_lift fan_lift platform laser_gate platform laser_gate "
         "bridge platform pendulum platform",
    "G": "stairs stairs button platform platform hiding_spot rolling_ball platform stairs bounce_pad bounce_pad "
         "platform stairs platform platform",
    "H": "platform ice_platform ice_platform finish_pad platform moving_platform moving_platform platform "
         "jump_pad jump_pad platform kill_brick platform ice_platform platform",
}

OBBY_ORDER = "A B C D E F G H A C E B D G F H A C".split()


def write_level(path, vocab, tokens, header):
    index = {label: i for i, label in enumerate(vocab)}
    ids = [index[t] for t in tokens]
    lines = [f"# {line}" for line in header]
    lines.append("[vocabulary]")
    lines.extend(vocab)
    lines.append("[tokens]")
    for i in range(0, len(ids), 16):
        lines.append(" ".join(str(t) for t in ids[i:i + 16]))
    path.write_text("\n".join(lines) + "\n")
    return ids


def check_level(name, vocab, ids, expected_len):
    assert len(vocab) == 32 and len(set(vocab)) == 32, name
    assert len(ids) == expected_len, (name, len(ids))
    assert set(ids) == set(range(32)), (name, sorted(set(range(32)) - set(ids)))
    # The final token must also occur earlier with a successor, so the Markov
    # baseline never hits a dead-end row.
    assert ids[-1] in ids[:-1], name


def unigram_originality_expectation(ids, length):
    n = len(ids)
    freq = [ids.count(t) / n for t in range(max(ids) + 1)]
    grams = {tuple(ids[i:i + length]) for i in range(n - length + 1)}
    hit = sum(math.prod(freq[t] for t in g) for g in grams)
    # Generated and original lengths match, so windows per variant equal the
    # original's window count and the expectation is 1 - hit.
    return 1.0 - hit


def main():
    DATA.mkdir(exist_ok=True)

    smb_tokens = [ABBREV[a] for seg in SMB_SEGMENTS for a in seg.split()]
    smb_ids = write_level(DATA / "smb_1-2.lvl", SMB_VOCAB, smb_tokens,
                          ["Underground level 1-2 as a column-feature sequence: 32 features, 157 columns."])
    check_level("smb", SMB_VOCAB, smb_ids, 157)
    for a, b in SMB_RULES:
        ia, ib = SMB_VOCAB.index(a), SMB_VOCAB.index(b)
        for x, y in zip(smb_ids, smb_ids[1:]):
            assert (x == ia) == (y == ib), (a, b)
    (DATA / "smb.rules").write_text(
        "# Pipe halves must connect: the left half is always immediately followed by its right half.\n"
        + "".join(f"follow {a} {b}\n" for a, b in SMB_RULES))

    obby_tokens = []
    for key in OBBY_ORDER:
        segment = OBBY_TEMPLATES[key].split()
        assert len(segment) == 15 and len(set(segment)) == 6, (key, len(segment), len(set(segment)))
        obby_tokens += ["save_point"] + segment
    obby_ids = write_level(DATA / "roblox_obby.lvl", OBBY_VOCAB, obby_tokens,
                           ["Hand-designed obby course: 32 features, 288 elements, a save point every 16."])
    check_level("obby", OBBY_VOCAB, obby_ids, 288)
    saves = [i for i, t in enumerate(obby_tokens) if t == "save_point"]
    assert all(b - a == 16 for a, b in zip(saves, saves[1:])) and len(saves) == 18
    (DATA / "roblox.rules").write_text(
        "# The rolling-ball trap is only playable as button -> hiding_spot -> rolling_ball.\n"
        "order button hiding_spot rolling_ball\n"
        "save save_point\n")

    (DATA / "calibration_example.json").write_text(
        '{\n'
        '  "gate_depol": {"x": 0.0015, "h": 0.0015, "ry": 0.002, "cnot": 0.025},\n'
        '  "readout_flip": [0.021, 0.034, 0.018, 0.027, 0.023, 0.031]\n'
        '}\n')

    for length in (5, 10):
        print(f"unigram originality expectation on smb_1-2, L={length}: "
              f"{unigram_originality_expectation(smb_ids, length):.12f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
