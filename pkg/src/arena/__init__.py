"""아레나: 게임 모델, 파서, 생성기, 샘플러"""

from src.arena.model import Arena, FinitePlay, LassoPlay, Player, validate_arena
from src.arena.parser import arena_document, load_arena, parse_arena, print_arena
from src.arena.generator import random_arena
from src.arena.sampler import draw, sample_play

__all__ = [
    "Arena",
    "FinitePlay",
    "LassoPlay",
    "Player",
    "validate_arena",
    "arena_document",
    "load_arena",
    "parse_arena",
    "print_arena",
    "random_arena",
    "draw",
    "sample_play",
]
