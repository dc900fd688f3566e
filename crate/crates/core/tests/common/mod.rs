#![allow(dead_code)]

use std::path::PathBuf;

use harmonizer_core::melody_io::parse_musicxml;
use harmonizer_core::Melody;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load(name: &str) -> Melody {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    parse_musicxml(&text).unwrap()
}

pub fn happy_birthday() -> Melody {
    load("happy_birthday.musicxml")
}

pub fn fur_elise() -> Melody {
    load("fur_elise.musicxml")
}
