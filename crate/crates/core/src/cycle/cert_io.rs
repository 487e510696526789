//! JSON form of [`CycleCertificate`].

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::three_worker::{Point, ThreeWorkerParams};

use super::certify::{CellItinerary, CycleCertificate, FULL_STATES_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub r1: Rational,
    pub r2: Rational,
}

impl From<&ThreeWorkerParams> for ParamsRecord {
    fn from(p: &ThreeWorkerParams) -> Self {
        ParamsRecord { r1: p.r1().clone(), r2: p.r2().clone() }
    }
}

impl ParamsRecord {
    pub fn to_params(&self) -> Result<ThreeWorkerParams> {
        ThreeWorkerParams::new(self.r1.clone(), self.r2.clone())
    }
}

/// On-disk certificate. Cycles longer than [`FULL_STATES_LIMIT`] store
/// only the seed and set `states_truncated`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub params: ParamsRecord,
    pub period: usize,
    pub itinerary: CellItinerary,
    pub seed: Point,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<Point>>,
    #[serde(default)]
    pub states_truncated: bool,
    pub transient_bound: Option<usize>,
}

impl From<&CycleCertificate> for CertificateFile {
    fn from(c: &CycleCertificate) -> Self {
        let short = c.period <= FULL_STATES_LIMIT;
        CertificateFile {
            params: ParamsRecord::from(&c.params),
            period: c.period,
            itinerary: c.itinerary.clone(),
            seed: c.seed.clone(),
            states: short.then(|| c.states()),
            states_truncated: !short,
            transient_bound: c.transient_bound,
        }
    }
}

impl CertificateFile {
    /// Rebuilds the certificate without verifying it.
    pub fn into_certificate(self) -> Result<CycleCertificate> {
        let params = self.params.to_params()?;
        if self.states.as_ref().is_some_and(|s| s.first() != Some(&self.seed)) {
            return Err(Error::Config("first stored state differs from the seed".into()));
        }
        Ok(CycleCertificate {
            params,
            period: self.period,
            seed: self.seed,
            itinerary: self.itinerary,
            transient_bound: self.transient_bound,
            states: self.states,
        })
    }
}

pub fn certificate_to_json(c: &CycleCertificate) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CertificateFile::from(c))?)
}

pub fn certificate_from_json(text: &str) -> Result<CycleCertificate> {
    serde_json::from_str::<CertificateFile>(text)?.into_certificate()
}

pub fn write_certificate(c: &CycleCertificate, path: &Path) -> Result<()> {
    std::fs::write(path, certificate_to_json(c)? + "\n")?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<CycleCertificate> {
    certificate_from_json(&std::fs::read_to_string(path)?)
}
