//! Constructions of the kernel elements.

use super::{KernelElement, Part};
use crate::diagrams::{product_lc, Diagram, Drawing, LinComb};
use crate::lambda::{epsilon, expand_marked, fragment, ladder, one, t_hat, wheel6, wheel6_diameter, LambdaElement, VogelPoly};
use crate::{q, qi, Error, Result};

/// Two legs joined through a doubled edge.
pub fn bubble() -> Result<Diagram> {
    let mut d = Drawing::legged();
    let l0 = d.leg(0, (-1.0, 0.0));
    let l1 = d.leg(1, (1.0, 0.0));
    let a = d.node((-0.4, 0.0));
    let b = d.node((0.4, 0.0));
    d.edge(l0, a);
    d.edge(b, l1);
    d.arc(a, b, 60.0, 120.0);
    d.arc(a, b, 300.0, 240.0);
    d.build()
}

/// Closure of a Lambda element placed into the bubble.
pub fn closed_bubble_with(v: &LambdaElement) -> Result<LinComb> {
    let b = LinComb::from_diagram(&bubble()?)?;
    let x = if v.terms == one()?.terms { b } else { crate::lambda::insert_lc(v, &b)? };
    close_all(&x)
}

fn close_all(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let d = k.diagram()?;
        if d.n_legs() == 2 {
            out.add_diagram(&d.attach(&[0, 1])?, c)?;
        } else {
            out.add_scaled(&crate::diagrams::close(&d.to_open())?, c);
        }
    }
    Ok(out)
}

fn expanded(x: &LinComb) -> Result<LinComb> {
    expand_marked(x)
}

fn lc(d: &Diagram) -> Result<LinComb> {
    LinComb::from_diagram(d)
}

fn t_pow(k: u32) -> VogelPoly {
    VogelPoly::monomial(qi(1), k, 0, 0)
}

fn w() -> VogelPoly {
    VogelPoly::omega()
}

/// omega + 2 t^3
fn w_plus_2t3() -> VogelPoly {
    w().add(&t_pow(3).scale(&qi(2)))
}

fn wp() -> VogelPoly {
    w().mul(&VogelPoly::p_sl())
}

/// Parts of P_sl acting on the four-legged eps_0, times t^k:
/// 2t eps_1 - (omega_0 + 2t^3) eps_0.
fn psl_eps0_parts(k: u32) -> Result<Vec<Part>> {
    let e0 = expanded(&epsilon(0)?)?;
    let e1 = expanded(&epsilon(1)?)?;
    Ok(vec![
        Part::new(qi(2), t_pow(k + 1), e1)?,
        Part::new(qi(-1), t_pow(k).mul(&w_plus_2t3()), e0)?,
    ])
}

/// Coefficient of t sigma in P_sl when acting on the wheel combination.
pub const WHEEL_SIGMA_COEFF: i64 = 2;

/// P_sl applied to the six-legged wheel combination X = W6d - t W6 with
/// sigma X = W6d_0 - omega_0 W6.
fn psl_wheel_parts(c: i64) -> Result<Vec<Part>> {
    let w6 = lc(&wheel6()?)?;
    let w6d = lc(&wheel6_diameter(None)?)?;
    let w6d0 = expanded(&lc(&wheel6_diameter(Some(0))?)?)?;
    let t = t_pow(1);
    let wt = w_plus_2t3();
    Ok(vec![
        Part::new(qi(c), t.clone(), w6d0)?,
        Part::new(qi(-c), t.mul(&w()), w6.clone())?,
        Part::new(qi(-1), wt.clone(), w6d)?,
        Part::new(qi(1), wt.mul(&t), w6)?,
    ])
}

/// The wheel element with a chosen coefficient on the sigma term.
pub fn wheel_element(c: i64) -> Result<KernelElement> {
    KernelElement::from_parts(
        "P_sl (W6d - t W6)",
        10,
        Some(6),
        format!("{c} t sigma X - (omega + 2t^3) X, X = wheel with diameter - t wheel"),
        psl_wheel_parts(c)?,
    )
}

/// Primitive kernel elements of order 8, 9 or 10.
pub fn build_primitive_kernel(order: usize) -> Result<Vec<KernelElement>> {
    let b = lc(&bubble()?)?;
    let el = |name: &str, legs, recipe: &str, parts| KernelElement::from_parts(name, order, Some(legs), recipe.into(), parts);
    match order {
        8 => Ok(vec![el("wP_sl * bubble", 2, "omega P_sl inserted into the bubble", vec![Part::new(qi(1), wp(), b)?])?]),
        9 => Ok(vec![
            el("t wP_sl * bubble", 2, "t omega P_sl inserted into the bubble", vec![Part::new(qi(1), t_pow(1).mul(&wp()), b)?])?,
            el("P_sl eps_0", 4, "2t eps_1 - (omega + 2t^3) eps_0", psl_eps0_parts(0)?)?,
        ]),
        10 => {
            let swp = VogelPoly::sigma().mul(&wp());
            let l2 = lc(&fragment(&ladder(&[-0.3, 0.3]))?)?;
            Ok(vec![
                el("t^2 wP_sl * bubble", 2, "t^2 omega P_sl inserted into the bubble", vec![Part::new(qi(1), t_pow(2).mul(&wp()), b.clone())?])?,
                el("sigma wP_sl * bubble", 2, "phi(sigma omega P_sl) inserted into the bubble", vec![Part::new(qi(1), swp, b)?])?,
                el("t P_sl eps_0", 4, "t (2t eps_1 - (omega + 2t^3) eps_0)", psl_eps0_parts(1)?)?,
                el("wP_sl * ladder", 4, "omega P_sl inserted into the two-rung ladder", vec![Part::new(qi(1), wp(), l2)?])?,
                wheel_element(WHEEL_SIGMA_COEFF)?,
            ])
        }
        _ => Err(Error::Capacity(format!("primitive kernel elements are built for orders 8..=10, got {order}"))),
    }
}

fn closed_lc(d: Drawing) -> Result<LinComb> {
    LinComb::from_diagram(&d.build()?)
}

/// Two horizontal chords at +-30 degrees; spokes from the upper chord to the
/// loop at `up` and from the lower chord at `down`.
fn two_chords(up: &[f64], down: &[f64]) -> Result<LinComb> {
    let mut d = Drawing::closed();
    let y = 0.5;
    for (ends, spokes, sy) in [((30.0, 150.0), up, y), ((330.0, 210.0), down, -y)] {
        let a = d.loop_point(ends.0);
        let b = d.loop_point(ends.1);
        let mut nodes: Vec<(f64, usize)> = vec![];
        for &s in spokes {
            let x = s.to_radians().cos();
            let n = d.node((x, sy));
            let p = d.loop_point(s);
            d.edge(n, p);
            nodes.push((x, n));
        }
        nodes.sort_by(|u, v| v.0.partial_cmp(&u.0).unwrap());
        let mut path = vec![a];
        path.extend(nodes.iter().map(|x| x.1));
        path.push(b);
        d.path(&path);
    }
    closed_lc(d)
}

/// A ring joined to the loop at 0, 60, 120, 180 degrees above a chord from
/// 330 to 210 degrees. With `kink` the 0-degree spoke is joined to the loop
/// at 30 degrees and the chord has one spoke at 270; otherwise the chord has
/// spokes at 250 and 290.
fn ring_over_chord(kink: bool) -> Result<LinComb> {
    let mut d = Drawing::closed();
    let c = (0.0, 0.3);
    let angles = [0.0, 60.0, 120.0, 180.0];
    let ring = d.ring(c, 0.3, &angles);
    for (i, &a) in angles.iter().enumerate() {
        let p = d.loop_point(a);
        if kink && a == 0.0 {
            let m = d.node((0.6, 0.15));
            d.path(&[ring[i], m, p]);
            let q = d.loop_point(30.0);
            d.edge(m, q);
        } else {
            d.edge(ring[i], p);
        }
    }
    let a = d.loop_point(330.0);
    let b = d.loop_point(210.0);
    let spokes: &[f64] = if kink { &[270.0] } else { &[290.0, 250.0] };
    let mut path = vec![a];
    for &s in spokes {
        let n = d.node((s.to_radians().cos(), -0.5));
        let p = d.loop_point(s);
        d.edge(n, p);
        path.push(n);
    }
    path.push(b);
    d.path(&path);
    closed_lc(d)
}

/// Square with four spokes to the loop.
fn square_closed() -> Result<LinComb> {
    let mut d = Drawing::closed();
    let angles = [45.0, 135.0, 225.0, 315.0];
    let ring = d.ring((0.0, 0.0), 0.4, &angles);
    for (i, &a) in angles.iter().enumerate() {
        let p = d.loop_point(a);
        d.edge(ring[i], p);
    }
    closed_lc(d)
}

/// Chords 30-150 and 210-330 joined by a vertical rung.
fn h_closed() -> Result<LinComb> {
    let mut d = Drawing::closed();
    let top = d.node((0.0, 0.5));
    let bot = d.node((0.0, -0.5));
    let ps: Vec<usize> = [30.0, 150.0, 210.0, 330.0].iter().map(|&a| d.loop_point(a)).collect();
    d.path(&[ps[0], top, ps[1]]);
    d.path(&[ps[3], bot, ps[2]]);
    d.edge(top, bot);
    closed_lc(d)
}

/// Marked cross with its legs on the loop.
fn cross_closed() -> Result<LinComb> {
    let mut d = Drawing::closed();
    let c = d.cross(0, (0.0, 0.0));
    for i in 0..4 {
        let p = d.loop_point(45.0 + 90.0 * i as f64);
        d.edge(c, p);
    }
    expand_marked(&closed_lc(d)?)
}

/// Two chords at 25-155 and 205-335 degrees, each carrying a bubble.
fn two_bubbles() -> Result<LinComb> {
    let mut d = Drawing::closed();
    for (s, e, y) in [(25.0, 155.0, 0.42), (335.0, 205.0, -0.42)] {
        let p = d.loop_point(s);
        let q = d.loop_point(e);
        let a = d.node((0.35, y));
        let b = d.node((-0.35, y));
        d.edge(p, a);
        d.edge(b, q);
        d.arc(a, b, 150.0, 30.0);
        d.arc(a, b, 210.0, 330.0);
    }
    closed_lc(d)
}

/// Non-primitive kernel elements of order 6 or 7.
pub fn build_nonprimitive_kernel(order: usize) -> Result<Vec<KernelElement>> {
    let el = |name: &str, recipe: &str, parts| KernelElement::from_parts(name, order, None, recipe.into(), parts);
    match order {
        6 => {
            let b = closed_bubble_with(&one()?)?;
            let tb = closed_bubble_with(&t_hat()?)?;
            let ttb = closed_bubble_with(&t_hat()?.pow(2)?)?;
            let mut x = product_lc(&b, &ttb)?;
            x.sub(&product_lc(&tb, &tb)?);
            Ok(vec![el("b (t^2 b) - (t b)(t b)", "products of closed bubbles", vec![Part::new(qi(1), t_pow(0), x)?])?])
        }
        7 => {
            let mut a = two_chords(&[50.0, 75.0, 105.0, 130.0], &[270.0])?;
            a.sub(&two_chords(&[60.0, 90.0, 120.0], &[250.0, 290.0])?);
            let mut b = ring_over_chord(false)?;
            b.sub(&ring_over_chord(true)?);
            let bb = t_pow(3).add(&w().scale(&q(-1, 2)));
            let third = vec![
                Part::new(qi(-1), w_plus_2t3(), square_closed()?)?,
                Part::new(q(4, 3), w().mul(&t_pow(1)), h_closed()?)?,
                Part::new(qi(2), t_pow(1), cross_closed()?)?,
                Part::new(qi(1), bb, two_bubbles()?)?,
            ];
            Ok(vec![
                el("two chords with spokes", "first two-chord figure", vec![Part::new(qi(1), t_pow(0), a)?])?,
                el("ring over a chord", "ring figure", vec![Part::new(qi(1), t_pow(0), b)?])?,
                el("marked combination", "-(omega + 2t^3) square + 4/3 omega t H + 2t eps_0 + (t^3 - omega/2) bubbles", third)?,
            ])
        }
        _ => Err(Error::Capacity(format!("non-primitive kernel elements are built for orders 6 and 7, got {order}"))),
    }
}

/// The six-legged figure at order 6: two chords with 3 + 1 spokes minus 2 + 2.
pub fn order6_figure() -> Result<LinComb> {
    let mut x = two_chords(&[60.0, 90.0, 120.0], &[270.0])?;
    x.sub(&two_chords(&[70.0, 110.0], &[250.0, 290.0])?);
    Ok(x)
}
