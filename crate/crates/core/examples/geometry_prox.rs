//! Mirror maps, Bregman divergences and prox steps on each built-in geometry.

use uvi::Geometry;

fn main() -> uvi::Result<()> {
    let geoms = [
        ("ball r=1", Geometry::ball(3, 1.0)?),
        ("box [-1,2]x[0,1]x[0,3]", Geometry::boxed(vec![-1.0, 0.0, 0.0], vec![2.0, 1.0, 3.0])?),
        ("euclidean simplex", Geometry::euclidean_simplex(3)?),
        ("entropic simplex", Geometry::entropic_simplex(3)?),
        ("product of simplices", Geometry::product(Geometry::entropic_simplex(2)?, Geometry::entropic_simplex(2)?)),
    ];

    for (name, g) in &geoms {
        let center = g.min_point();
        let dim = g.dim();
        let push: Vec<f64> = (0..dim).map(|i| if i % 2 == 0 { 1.0 } else { -0.5 }).collect();
        let step = g.prox_step(&center, &push, 0.5)?;
        println!("{name}");
        println!("  D^2 = {:.6}, argmin R = {center:?}", g.diameter_sq());
        println!("  prox(center, {push:?}, 0.5) = {step:.4?}");
        println!("  Bregman(step, center) = {:.6}", g.bregman(&step, &center)?);
        println!(
            "  |push|* = {:.4}, |step - center| = {:.4}",
            g.dual_norm(&push)?,
            g.primal_norm(&uvi_sub(&step, &center))?
        );
        println!("  best vertex against push: {:?}", g.linear_minimizer(&push)?);
    }

    // the prox on a simplex is a projection in disguise
    println!("project [0.9, 0.8, -0.5] -> {:?}", uvi::geometry::project_simplex(&[0.9, 0.8, -0.5]));
    Ok(())
}

fn uvi_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
