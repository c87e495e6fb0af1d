#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ftl {

inline unsigned default_threads()
{
	const unsigned n = std::thread::hardware_concurrency();
	return n ? n : 1;
}

// Calls f(i) for i in [0, n) on up to `threads` workers.  Work is handed out
// by index, so any output written to slot i is independent of scheduling.
// The first exception thrown by f is rethrown here after all workers stop.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
	threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
	if (threads <= 1)
	{
		for (std::size_t i = 0; i < n; ++i) f(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::atomic<bool> failed{false};
	std::exception_ptr error;
	std::mutex error_mutex;
	auto worker = [&] {
		for (;;)
		{
			const std::size_t i = next.fetch_add(1);
			if (i >= n || failed.load()) return;
			try
			{
				f(i);
			}
			catch (...)
			{
				std::lock_guard lock(error_mutex);
				if (!error) error = std::current_exception();
				failed = true;
			}
		}
	};
	std::vector<std::thread> pool;
	for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
	worker();
	for (auto& th : pool) th.join();
	if (error) std::rethrow_exception(error);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f)
{
	std::vector<T> out(n);
	parallel_for(n, threads, [&](std::size_t i) { out[i] = f(i); });
	return out;
}

}  // namespace ftl
