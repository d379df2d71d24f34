//! 144-bit searches through blocks of 16 joined by an AND-tree.
//!
//! Reproduces exact match, a one-bit miss, local masking (stored X) and
//! global masking (search X).

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smtjsim::array::{decode_search_symbols, encode_bits, SenseAmpConfig, TcamArray};
use smtjsim::cell::{format_word, EncodingScheme, TernarySymbol};
use smtjsim::device::{calibrate_offset, Device};
use smtjsim::harness::{random_word, table_for, RunConfig, TableSettings};

fn flip(s: TernarySymbol) -> TernarySymbol {
    match s {
        TernarySymbol::Zero => TernarySymbol::One,
        TernarySymbol::One => TernarySymbol::Zero,
        x => x,
    }
}

fn main() -> smtjsim::Result<()> {
    let cfg = RunConfig {
        table: TableSettings {
            step: 0.01,
            ..Default::default()
        },
        ..Default::default()
    };
    let device = Device::new(cfg.device)?;
    let enc = EncodingScheme::from_calibration(&calibrate_offset(&device, &cfg.sim)?);
    let table = Arc::new(table_for(&cfg, &device, &enc)?);

    let mut rng = ChaCha8Rng::seed_from_u64(144);
    let binary = |rng: &mut ChaCha8Rng| -> Vec<TernarySymbol> {
        random_word(rng, 144)
            .into_iter()
            .map(|s| {
                if s == TernarySymbol::DontCare {
                    TernarySymbol::One
                } else {
                    s
                }
            })
            .collect()
    };
    let exact = binary(&mut rng);
    let mut lsb_x = binary(&mut rng);
    lsb_x[143] = TernarySymbol::DontCare;
    let array = TcamArray::new(
        vec![exact.clone(), lsb_x.clone()],
        16,
        enc,
        table,
        SenseAmpConfig::default(),
    )?;
    println!(
        "n_max {} cells, block size {}",
        array.max_column_length(),
        array.block_size()
    );

    let mut one_off = exact.clone();
    one_off[77] = flip(one_off[77]);
    let mut lsb_flip = lsb_x.clone();
    lsb_flip[143] = TernarySymbol::One;
    let mut lsb_other = lsb_x.clone();
    lsb_other[143] = TernarySymbol::Zero;
    let mut global = exact.clone();
    global[5] = TernarySymbol::DontCare;
    global[6] = TernarySymbol::DontCare;

    let cases = [
        ("exact match", &exact, 0),
        ("bit 77 flipped", &one_off, 0),
        ("stored X, search 1", &lsb_flip, 1),
        ("stored X, search 0", &lsb_other, 1),
        ("search X masks", &global, 0),
    ];
    for (name, word, column) in cases {
        // Drive the search bus through the two-bit decoder.
        let bits: Vec<(bool, bool)> = word.iter().map(|s| encode_bits(*s)).collect();
        let decoded = decode_search_symbols(&bits)?;
        let r = array.search(&decoded)?;
        let c = &r.columns[column];
        let failing: Vec<usize> = c
            .blocks
            .iter()
            .filter(|b| !b.verdict.is_match())
            .map(|b| b.block)
            .collect();
        println!(
            "{name:20} column {column}: {:?}  failing blocks {failing:?}",
            c.verdict
        );
    }
    println!("stored[1] = {}", format_word(&lsb_x));
    Ok(())
}
