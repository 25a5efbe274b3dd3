//! Session plumbing shared by the CLI subcommands.

use std::path::PathBuf;

use crate::error::Error;
use crate::expansion::weight_parity_ok;
use crate::jsonio;
use crate::lattice::EvenLattice;
use crate::rat::{format_rat, Rat};
use crate::series::SeriesConfig;
use crate::weilrep::WeilData;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Numeric,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Backend> {
        match s {
            "exact" => Ok(Backend::Exact),
            "numeric" => Ok(Backend::Numeric),
            other => Err(Error::BadInput(format!(
                "unknown backend {other:?}, expected exact or numeric"
            ))),
        }
    }
}

/// Everything a series subcommand needs before it starts working.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub lattice_path: PathBuf,
    pub genus: usize,
    pub weight: Rat,
    pub backend: Backend,
    pub series: SeriesConfig,
    pub output: Option<PathBuf>,
}

pub struct Session {
    pub config: SessionConfig,
    pub weil: WeilData,
}

impl Session {
    /// Read the lattice file and validate the weight parity up front.
    pub fn open(config: SessionConfig) -> Result<Session> {
        let text = std::fs::read_to_string(&config.lattice_path)?;
        let lat = jsonio::lattice_from_str(&text)?;
        Session::from_lattice(config, lat)
    }

    pub fn from_lattice(config: SessionConfig, lat: EvenLattice) -> Result<Session> {
        config.series.validate()?;
        if config.genus == 0 || config.genus > 2 {
            return Err(Error::GenusTooLarge(config.genus));
        }
        if !weight_parity_ok(lat.sig(), &config.weight) {
            return Err(Error::BadWeight(format!(
                "weight {} has the wrong parity for signature {}",
                format_rat(&config.weight),
                lat.sig()
            )));
        }
        let weil = WeilData::new(lat)?;
        Ok(Session { config, weil })
    }
}
