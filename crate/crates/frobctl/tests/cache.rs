use std::fs;
use std::sync::Arc;

use frobctl::cache::{DiskCache, SharedMemo};
use frobenius_core::charring::weyl_character;
use frobenius_core::{CartanType, CharacterMemo, RootDatum, Weight, WeylCharacters};

fn g2() -> (CartanType, RootDatum) {
    let ty: CartanType = "G2".parse().unwrap();
    (ty, RootDatum::new(ty).unwrap())
}

#[test]
fn put_then_get_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (ty, d) = g2();
    let lambda = Weight::from_slice(&[1, 1]);
    let c = weyl_character(&d, &lambda).unwrap();
    let cache = DiskCache::open(dir.path());
    cache.put(ty, &lambda, &c);
    assert!(dir.path().join("G2_1_1.json").exists());
    assert_eq!(cache.get(ty, &lambda), Some(c));
    assert_eq!(cache.get(ty, &Weight::from_slice(&[0, 1])), None);
}

#[test]
fn missing_entries_are_computed_and_filled() {
    let dir = tempfile::tempdir().unwrap();
    let (ty, d) = g2();
    let lambda = Weight::from_slice(&[2, 0]);
    let memo = SharedMemo::new(ty, DiskCache::open(dir.path()));
    let chars = WeylCharacters::new(&d, &memo);
    let c = chars.weyl(&lambda).unwrap();
    assert_eq!(*c, weyl_character(&d, &lambda).unwrap());
    let text = fs::read_to_string(dir.path().join("G2_2_0.json")).unwrap();
    assert!(text.starts_with(r#"{"type":"G2","weights":[["#));

    // a fresh memo over the same directory serves the file without recomputing
    let fresh = SharedMemo::new(ty, DiskCache::open(dir.path()));
    assert_eq!(fresh.lookup(&lambda).as_deref(), Some(&*c));
}

#[test]
fn corrupt_entries_are_recomputed_and_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let (ty, d) = g2();
    let lambda = Weight::from_slice(&[0, 1]);
    let path = dir.path().join("G2_0_1.json");
    let truth = weyl_character(&d, &lambda).unwrap();

    for junk in ["{not json", r#"{"type":"G2","weights":[[[9,9],1]]}"#, r#"{"type":"A2","weights":[[[0,1],1]]}"#] {
        fs::write(&path, junk).unwrap();
        let memo = SharedMemo::new(ty, DiskCache::open(dir.path()));
        let chars = WeylCharacters::new(&d, &memo);
        assert_eq!(*chars.weyl(&lambda).unwrap(), truth);
        assert_eq!(DiskCache::open(dir.path()).get(ty, &lambda), Some(truth.clone()));
    }
}

#[test]
fn unusable_directory_disables_cache() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let cache = DiskCache::open(blocker.join("sub"));
    assert!(!cache.is_enabled());

    let (ty, d) = g2();
    let memo = SharedMemo::new(ty, cache);
    let chars = WeylCharacters::new(&d, &memo);
    assert_eq!(chars.weyl(&Weight::from_slice(&[1, 0])).unwrap().dimension(), 7.into());
}

#[test]
fn memo_is_write_once() {
    let (ty, d) = g2();
    let memo = SharedMemo::in_memory(ty);
    let lambda = Weight::from_slice(&[1, 0]);
    let first = memo.store(lambda, Arc::new(weyl_character(&d, &lambda).unwrap()));
    let second = memo.store(lambda, Arc::new(weyl_character(&d, &lambda).unwrap()));
    assert!(Arc::ptr_eq(&first, &second));
    assert_eq!(memo.len(), 1);
}

#[test]
fn concurrent_fills_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (ty, d) = g2();
    let memo = SharedMemo::new(ty, DiskCache::open(dir.path()));
    let chars = WeylCharacters::new(&d, &memo);
    let lambda = Weight::from_slice(&[2, 1]);
    let got: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| chars.weyl(&lambda).unwrap())).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(got.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(DiskCache::open(dir.path()).get(ty, &lambda).as_ref(), Some(&*got[0]));
}

#[test]
fn cli_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let dir_s = dir.path().to_str().unwrap();
    let args = ["frobctl", "contract", "--type", "A2", "--p", "2", "--lambda", "2,1", "--cache-dir", dir_s];
    let mut first = Vec::new();
    assert_eq!(frobctl::run(args, &mut first, &mut Vec::new()), 0);
    assert!(dir.path().join("A2_2_1.json").exists());
    let mut second = Vec::new();
    assert_eq!(frobctl::run(args, &mut second, &mut Vec::new()), 0);
    assert_eq!(first, second);
}
