//! Reproducible random configurations.
//!
//! Every component draws from its own ChaCha stream: the key packs
//! `(seed, n, d, trial)` and the stream id packs `(kind, index)`. The
//! instance `(s, l)` is therefore the first `s` sundials and the first `l`
//! lines of one fixed sequence, which lets a sweep extend instances
//! incrementally and still agree with a standalone run.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sundial_core::geometry::{make_generic_sundial, random_line};
use sundial_core::gfp::Echelon;
use sundial_core::scheme::ConditionBuilder;
use sundial_core::{Prime, Result, Scheme, SchemeComponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Sundial = 1,
    Line = 2,
    Castelnuovo = 3,
    Family = 4,
}

pub fn rng_for(seed: u64, n: usize, d: u32, trial: u32, stream: Stream, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (chunk, v) in key
        .chunks_exact_mut(8)
        .zip([seed, n as u64, d as u64, trial as u64])
    {
        chunk.copy_from_slice(&v.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(((stream as u64) << 56) | index);
    rng
}

/// Identifies one random configuration of sundials and lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceKey {
    pub n: usize,
    pub d: u32,
    pub seed: u64,
    pub trial: u32,
    pub prime: Prime,
}

impl InstanceKey {
    pub fn sundial(&self, index: u64) -> Result<SchemeComponent> {
        let mut rng = rng_for(
            self.seed,
            self.n,
            self.d,
            self.trial,
            Stream::Sundial,
            index,
        );
        Ok(SchemeComponent::Sundial(make_generic_sundial(
            self.n, self.prime, &mut rng,
        )?))
    }

    pub fn line(&self, index: u64) -> SchemeComponent {
        let mut rng = rng_for(self.seed, self.n, self.d, self.trial, Stream::Line, index);
        SchemeComponent::Line(random_line(self.n, self.prime, &mut rng))
    }

    /// `s` sundials followed by `l` lines.
    pub fn scheme(&self, s: u64, l: u64) -> Result<Scheme> {
        let mut x = Scheme::new(self.n);
        for i in 0..s {
            x.push(self.sundial(i)?)?;
        }
        for j in 0..l {
            x.push(self.line(j))?;
        }
        Ok(x)
    }

    /// `dim (I_X)_d` for the instance `(s, l)`.
    pub fn ideal_dimension(&self, s: u64, l: u64) -> Result<usize> {
        ConditionBuilder::new(self.n, self.d, self.prime)?.ideal_dimension(&self.scheme(s, l)?)
    }
}

/// One cell of a sweep: `dim (I_X)_d` for `(s, l)` and the time spent on
/// its increment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub s: u64,
    pub l: u64,
    pub computed: usize,
    pub elapsed_ms: u64,
}

fn push(cb: &ConditionBuilder, c: &SchemeComponent, ech: &mut Echelon) -> Result<()> {
    if !ech.is_full() {
        for row in cb.component_rows(c)? {
            ech.insert(&row);
        }
    }
    Ok(())
}

/// All `(s, l)` with `2s + l <= bound`, computed by extending one echelon
/// over the sundials and branching it for the lines.
pub fn sweep_cells(key: &InstanceKey, bound: u64) -> Result<Vec<Cell>> {
    let cb = ConditionBuilder::new(key.n, key.d, key.prime)?;
    let cols = cb.columns();
    let lines: Vec<SchemeComponent> = (0..bound).map(|j| key.line(j)).collect();
    let mut prefix = Echelon::new(cols, key.prime);
    let mut cells = Vec::new();
    for s in 0..=bound / 2 {
        let start = Instant::now();
        if s > 0 {
            push(&cb, &key.sundial(s - 1)?, &mut prefix)?;
        }
        cells.push(Cell {
            s,
            l: 0,
            computed: cols - prefix.rank(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
        let mut branch = prefix.clone();
        for (j, line) in lines.iter().enumerate().take((bound - 2 * s) as usize) {
            let start = Instant::now();
            push(&cb, line, &mut branch)?;
            cells.push(Cell {
                s,
                l: j as u64 + 1,
                computed: cols - branch.rank(),
                elapsed_ms: start.elapsed().as_millis() as u64,
            });
        }
    }
    Ok(cells)
}
