use proptest::prelude::*;
use tangency_lab::geom::{line_second_circle_intersection, GeomError, Polyline};
use tangency_lab::rational::{from_text, to_f64, to_text};
use tangency_lab::{frac, int, orient, pt, segment_intersect, Intersection, Point, Rational, Segment, Sign};

fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
    Segment::new(pt(a.0, a.1), pt(b.0, b.1)).unwrap()
}

#[test]
fn orient_examples() {
    assert_eq!(orient(&pt(0, 0), &pt(1, 0), &pt(0, 1)), Sign::Positive);
    assert_eq!(orient(&pt(0, 0), &pt(1, 1), &pt(2, 2)), Sign::Zero);
    assert_eq!(orient(&pt(0, 0), &pt(0, 1), &pt(1, 0)), Sign::Negative);
}

#[test]
fn segment_intersect_examples() {
    assert_eq!(
        segment_intersect(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))),
        Intersection::Point(pt(1, 1))
    );
    assert_eq!(segment_intersect(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))), Intersection::Empty);
    assert_eq!(
        segment_intersect(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
        Intersection::Overlap(pt(1, 0), pt(2, 0))
    );
    // Touching at an endpoint is a single point, not an overlap.
    assert_eq!(
        segment_intersect(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 0))),
        Intersection::Point(pt(1, 0))
    );
    assert_eq!(
        segment_intersect(&seg((0, 0), (4, 0)), &seg((1, 0), (1, 5))),
        Intersection::Point(pt(1, 0))
    );
}

#[test]
fn second_circle_intersection_examples() {
    let c = pt(0, 1);
    let base = pt(0, 0);
    assert_eq!(line_second_circle_intersection(&c, &int(1), &base, &int(1)).unwrap(), pt(1, 1));
    assert_eq!(
        line_second_circle_intersection(&c, &int(1), &base, &frac(1, 2)).unwrap(),
        Point::new(frac(4, 5), frac(2, 5))
    );
    for s in [frac(1, 2), int(2), int(3)] {
        let p = line_second_circle_intersection(&c, &int(1), &base, &s).unwrap();
        assert_eq!(p.dist2(&c), int(1));
        assert_eq!(&p.y - &base.y, &s * (&p.x - &base.x));
    }
    assert_eq!(
        line_second_circle_intersection(&c, &int(1), &base, &int(0)),
        Err(GeomError::HorizontalSlope)
    );
    assert_eq!(
        line_second_circle_intersection(&c, &int(1), &pt(0, 1), &int(1)),
        Err(GeomError::BaseNotBottom)
    );
}

#[test]
fn polyline_validation() {
    assert_eq!(Polyline::new(vec![pt(0, 0)]), Err(GeomError::TooFewVertices));
    assert_eq!(
        Polyline::new(vec![pt(0, 0), pt(1, 0), pt(1, 0)]),
        Err(GeomError::RepeatedVertex(1, 2))
    );
    assert!(Polyline::new(vec![pt(0, 0), pt(1, 0), pt(2, 0)]).is_ok());
    assert_eq!(Segment::new(pt(1, 1), pt(1, 1)), Err(GeomError::DegenerateSegment));
}

#[test]
fn rational_text_form() {
    assert_eq!(to_text(&frac(6, -4)), "-3/2");
    assert_eq!(to_text(&int(5)), "5/1");
    assert_eq!(from_text("10/4").unwrap(), frac(5, 2));
    assert_eq!(from_text("7").unwrap(), int(7));
    assert!(from_text("1/0").is_err());
    assert!(from_text("x/2").is_err());
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| frac(n, d))
}

fn point() -> impl Strategy<Value = Point> {
    (rational(), rational()).prop_map(|(x, y)| Point::new(x, y))
}

fn small_point() -> impl Strategy<Value = Point> {
    (-6i64..6, -6i64..6).prop_map(|(x, y)| pt(x, y))
}

fn segment() -> impl Strategy<Value = Segment> {
    (small_point(), small_point())
        .prop_filter("distinct endpoints", |(a, b)| a != b)
        .prop_map(|(a, b)| Segment::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn arithmetic_is_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if b != int(0) {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }

    #[test]
    fn orient_agrees_with_floats_when_far_from_zero(a in point(), b in point(), c in point()) {
        let f = |p: &Point| (to_f64(&p.x), to_f64(&p.y));
        let (a2, b2, c2) = (f(&a), f(&b), f(&c));
        let cross = (b2.0 - a2.0) * (c2.1 - a2.1) - (b2.1 - a2.1) * (c2.0 - a2.0);
        if cross.abs() > 1e-6 {
            let expect = if cross > 0.0 { Sign::Positive } else { Sign::Negative };
            prop_assert_eq!(orient(&a, &b, &c), expect);
        }
    }

    #[test]
    fn second_intersection_has_zero_residual(
        c in point(),
        r in (1i64..50, 1i64..50).prop_map(|(n, d)| frac(n, d)),
        s in rational().prop_filter("nonzero slope", |s| *s != int(0)),
    ) {
        let base = Point::new(c.x.clone(), &c.y - &r);
        let p = line_second_circle_intersection(&c, &r, &base, &s).unwrap();
        prop_assert_eq!(p.dist2(&c), &r * &r);
        prop_assert_ne!(p, base);
    }

    #[test]
    fn segment_intersect_is_symmetric(s in segment(), t in segment()) {
        prop_assert_eq!(segment_intersect(&s, &t), segment_intersect(&t, &s));
        let flipped = Segment::new(s.b.clone(), s.a.clone()).unwrap();
        prop_assert_eq!(segment_intersect(&s, &t), segment_intersect(&flipped, &t));
    }

    #[test]
    fn intersection_points_lie_on_both(s in segment(), t in segment()) {
        match segment_intersect(&s, &t) {
            Intersection::Empty => {}
            Intersection::Point(p) => {
                prop_assert!(s.contains(&p) && t.contains(&p));
            }
            Intersection::Overlap(p, q) => {
                prop_assert!(p.lex_cmp(&q).is_lt());
                for x in [&p, &q] {
                    prop_assert!(s.contains(x) && t.contains(x));
                }
            }
        }
    }

    #[test]
    fn collinear_points_orient_zero(a in point(), d in point(), t1 in rational(), t2 in rational()) {
        let b = a.add(&d.scale(&t1));
        let c = a.add(&d.scale(&t2));
        for (x, y, z) in [(&a, &b, &c), (&b, &a, &c), (&c, &b, &a), (&b, &c, &a)] {
            prop_assert_eq!(orient(x, y, z), Sign::Zero);
        }
    }
}
