//! Assembles the per-knot data the checks run on.

use serde::{Deserialize, Serialize};

use crate::alexander::alexander;
use crate::asymptotics::KnotContext;
use crate::braid::BraidWord;
use crate::cyclotomic::{cyclotomic_from_jones, CyclotomicCoefficients};
use crate::error::{Error, Result};
use crate::expansions::{loop_data_from_jones, reconstruct_all, FitReport, LoopData, Reconstruction};
use crate::jones::{colored_jones, MirrorConvention};
use crate::laurent::LaurentPolynomial;

/// A knot with its colored Jones table and Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub braid: BraidWord,
    pub convention: MirrorConvention,
    /// `jones[i]` is `J_{K,i+1}`.
    pub jones: Vec<LaurentPolynomial>,
    pub alexander: LaurentPolynomial,
}

impl KnotRecord {
    pub fn compute(braid: &BraidWord, n_max: u32, convention: MirrorConvention) -> Result<Self> {
        let jones = (1..=n_max)
            .map(|n| colored_jones(braid, n, convention))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            braid: braid.clone(),
            convention,
            jones,
            alexander: alexander(braid)?,
        })
    }

    pub fn name(&self) -> String {
        self.braid.name().unwrap_or("knot").to_string()
    }

    /// Adds colors up to `n_max` if the table is shorter.
    pub fn extend_to(&mut self, n_max: u32) -> Result<()> {
        for n in self.jones.len() as u32 + 1..=n_max {
            self.jones.push(colored_jones(&self.braid, n, self.convention)?);
        }
        Ok(())
    }

    pub fn cyclotomic(&self, k_max: usize) -> Result<CyclotomicCoefficients> {
        cyclotomic_from_jones(self.name(), self.convention, &self.jones, k_max)
    }

    /// Loop series to `order` (needs colors `1..=order+3`) and `P_{K,0..=loops}`.
    pub fn loop_data(&self, order: usize, loops: usize) -> Result<(LoopData, FitReport, Vec<Result<Reconstruction>>)> {
        let needed = order + 3;
        if self.jones.len() < needed {
            return Err(Error::InvalidArgument(format!(
                "loop series to order {order} needs colors 1..={needed}, have {}",
                self.jones.len()
            )));
        }
        let (mut data, fit) = loop_data_from_jones(self.name(), &self.alexander, &self.jones[..needed], order)?;
        let recs = reconstruct_all(&mut data, loops, 4, 64);
        Ok((data, fit, recs))
    }

    pub fn context(&self, cyclo: Option<CyclotomicCoefficients>, loops: Option<LoopData>, precision: u32) -> KnotContext {
        KnotContext {
            braid: self.braid.clone(),
            convention: self.convention,
            jones: self.jones.clone(),
            cyclo,
            delta: self.alexander.clone(),
            loops,
            precision,
        }
    }
}
