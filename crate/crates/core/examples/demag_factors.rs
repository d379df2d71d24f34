//! Shape anisotropy of the free layer.
//!
//! Prints the demagnetizing factors of the elliptic-cylinder free layer next
//! to those of the inscribed ellipsoid, and the in-plane shape barrier.

use smtjsim::magnetodynamics::{
    demag_factors, ellipsoid_demag_factors, MagnetParams, BOLTZMANN, MU0,
};

fn main() -> smtjsim::Result<()> {
    let p = MagnetParams::terfenol_d();
    let cyl = demag_factors(&p)?;
    let ell = ellipsoid_demag_factors(p.major_axis, p.minor_axis, p.thickness)?;
    println!(
        "{:.0} x {:.0} x {:.0} nm",
        p.major_axis * 1e9,
        p.minor_axis * 1e9,
        p.thickness * 1e9
    );
    println!("               Nx        Ny        Nz");
    println!("cylinder   {:.6}  {:.6}  {:.6}", cyl.nx, cyl.ny, cyl.nz);
    println!("ellipsoid  {:.6}  {:.6}  {:.6}", ell.nx, ell.ny, ell.nz);

    let ms = p.saturation_magnetization;
    let barrier = 0.5 * MU0 * ms * ms * (cyl.ny - cyl.nx) * p.volume();
    println!(
        "in-plane barrier {:.3e} J = {:.0} kT at 300 K",
        barrier,
        barrier / (BOLTZMANN * 300.0)
    );
    Ok(())
}
