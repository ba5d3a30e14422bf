use split_spline::{quasi_interpolate, Basis64, Derivatives, Interval, Partition64, PhiMap, QiKind};

fn main() -> Result<(), split_spline::Error> {
    let phi = PhiMap::alternating(17, &[3, 4])?;
    let partition = Partition64::uniform(Interval::new(0.0, 1.0)?, 16, phi)?;
    let basis = Basis64::new(&partition)?;
    let f = Derivatives {
        f: |x: f64, j: usize| match j % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        },
        max_order: 3,
    };
    let q = quasi_interpolate(&basis, QiKind::Polarization, &f)?;
    println!("{:e}", q.value(0.3)? - 0.3f64.sin());
    Ok(())
}
