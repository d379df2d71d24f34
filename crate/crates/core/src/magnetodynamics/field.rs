use nalgebra::Vector3;
use rand::Rng;
use rand_distr::StandardNormal;

use super::demag::{demag_factors, DemagFactors};
use super::params::{MagnetParams, SimOptions, StressState, BOLTZMANN, MU0};
use crate::error::Result;

/// Free layer with everything that stays fixed during a run: material,
/// cached demagnetizing factors, the fixed-layer dipole field and the
/// in-plane direction of the fixed-layer magnetization.
#[derive(Debug, Clone, PartialEq)]
pub struct Macrospin {
    pub params: MagnetParams,
    pub demag: DemagFactors,
    /// A/m
    pub dipole: Vector3<f64>,
    /// In-plane angle of the fixed-layer magnetization, degrees from the
    /// free-layer major axis.
    pub reference_deg: f64,
}

impl Macrospin {
    /// `dipole_tesla` is the flux density `mu0 * H_dipole`.
    pub fn new(
        params: MagnetParams,
        dipole_tesla: Vector3<f64>,
        reference_deg: f64,
    ) -> Result<Self> {
        params.validate()?;
        let demag = demag_factors(&params)?;
        Ok(Self::with_demag(params, demag, dipole_tesla, reference_deg))
    }

    pub fn with_demag(
        params: MagnetParams,
        demag: DemagFactors,
        dipole_tesla: Vector3<f64>,
        reference_deg: f64,
    ) -> Self {
        Self {
            params,
            demag,
            dipole: dipole_tesla / MU0,
            reference_deg,
        }
    }

    /// Uniaxial stress-anisotropy field magnitude per unit stress, (A/m)/Pa.
    fn stress_coefficient(&self) -> f64 {
        3.0 * self.params.magnetostriction / (MU0 * self.params.saturation_magnetization)
    }

    /// Dipole + shape + stress field, A/m.
    pub fn deterministic_field(&self, m: &Vector3<f64>, stress: &StressState) -> Vector3<f64> {
        let ms = self.params.saturation_magnetization;
        let k = self.stress_coefficient();
        let n = &self.demag;
        Vector3::new(
            self.dipole.x - ms * n.nx * m.x - k * stress.sigma_major * m.x,
            self.dipole.y - ms * n.ny * m.y - k * stress.sigma_minor * m.y,
            self.dipole.z - ms * n.nz * m.z,
        )
    }

    /// Total effective field including a thermal sample, A/m.
    pub fn effective_field(
        &self,
        m: &Vector3<f64>,
        stress: &StressState,
        thermal: &Vector3<f64>,
    ) -> Vector3<f64> {
        self.deterministic_field(m, stress) + thermal
    }

    /// Free energy of the macrospin, J.
    pub fn total_energy(&self, m: &Vector3<f64>, stress: &StressState) -> f64 {
        let p = &self.params;
        let ms = p.saturation_magnetization;
        let n = &self.demag;
        let shape = 0.5 * MU0 * ms * ms * (n.nx * m.x * m.x + n.ny * m.y * m.y + n.nz * m.z * m.z);
        let magnetoelastic = 1.5
            * p.magnetostriction
            * (stress.sigma_major * m.x * m.x + stress.sigma_minor * m.y * m.y);
        let zeeman = -MU0 * ms * m.dot(&self.dipole);
        p.volume() * (shape + magnetoelastic + zeeman)
    }

    /// Energy of the in-plane state at angle `phi` (radians from the major
    /// axis).
    pub(crate) fn in_plane_energy(&self, phi: f64, stress: &StressState) -> f64 {
        let (s, c) = phi.sin_cos();
        self.total_energy(&Vector3::new(c, s, 0.0), stress)
    }

    /// Natural energy scale `mu0 Ms^2 V / 2`, J.
    pub(crate) fn energy_scale(&self) -> f64 {
        let ms = self.params.saturation_magnetization;
        0.5 * MU0 * ms * ms * self.params.volume()
    }
}

/// Standard deviation of each thermal-field component, A/m.
pub fn thermal_sigma(params: &MagnetParams, opts: &SimOptions) -> f64 {
    if opts.temperature == 0.0 {
        return 0.0;
    }
    let num = 2.0 * params.damping * BOLTZMANN * opts.temperature;
    let den = params.gyromagnetic_ratio
        * MU0
        * MU0
        * params.saturation_magnetization
        * params.volume()
        * opts.dt;
    (num / den).sqrt()
}

/// One draw of the fluctuating field, A/m. Exactly zero at 0 K.
pub fn thermal_field_sample<R: Rng + ?Sized>(
    params: &MagnetParams,
    opts: &SimOptions,
    rng: &mut R,
) -> Vector3<f64> {
    let sigma = thermal_sigma(params, opts);
    if sigma == 0.0 {
        return Vector3::zeros();
    }
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    let z: f64 = rng.sample(StandardNormal);
    Vector3::new(x, y, z) * sigma
}
