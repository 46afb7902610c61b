//! Small shared helpers.

/// Apply `f` to every item, fanning out over at most `threads` OS
/// threads. Order of results matches input order. `threads == 1` (or a
/// single item) runs inline, keeping call stacks simple under tests.
pub fn par_map<T, U, F>(items: Vec<T>, threads: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }

    let mut slots: Vec<Option<U>> = Vec::with_capacity(items.len());
    slots.resize_with(items.len(), || None);
    let work: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let queue = std::sync::Mutex::new(work);
    let out = std::sync::Mutex::new(&mut slots);
    let fref = &f;

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop();
                let Some((i, item)) = job else { break };
                let val = fref(item);
                out.lock().expect("slot lock")[i] = Some(val);
            });
        }
    });

    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}
