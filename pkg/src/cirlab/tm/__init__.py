"""Turing machines: simulator, tape encodings, ECA machines, cost models and the track compiler."""

from .compiler import compile_to_single_tape, compiled_output, compiled_tracks
from .costs import cost_model_1tape, cost_model_2tape
from .eca_machine import build_eca_machine_2tape, build_rule158_direct_machine, decode_machine_output
from .encoding import decode_input, decode_payloads, decode_tape, encode_evolution, encode_input, row_needle
from .machine import BLANK, MachineRun, TMSpec, load_spec, run, save_spec, spec_from_json, spec_to_json
from .palindrome import palindrome_1tape, palindrome_2tape
