//! Write SVG plots of the built-in models to the current directory.

use hrnr::geometry::TolerancePolicy;
use hrnr::models::{bilateral_shift, durszt, square_region};
use hrnr::range::region;
use hrnr::svg::region_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = TolerancePolicy::default();
    for (name, spec, k) in [
        ("durszt", durszt(2), 2),
        ("bilateral_shift", bilateral_shift(), 1),
        ("square_region", square_region(2), 2),
    ] {
        let r = region(&spec, k, 360, &tol)?;
        let path = format!("{name}.svg");
        std::fs::write(&path, region_svg(&r, Some(&spec)))?;
        println!("wrote {path}");
    }
    Ok(())
}
