#pragma once

// Small helpers for the task-parallel parts of the library (Strassen's seven
// products, the two independent LEU sub-decompositions). Work is always
// merged in a fixed order, so results do not depend on the schedule.

#include <exception>
#include <utility>

#include <omp.h>

namespace leu::parallel {

/// Run fn inside an OpenMP parallel region with a single producer thread, so
/// fn may spawn tasks. If already inside a region fn runs directly.
template <class Fn>
void with_task_region(Fn&& fn) {
  if (omp_in_parallel()) {
    fn();
    return;
  }
  std::exception_ptr error;
#pragma omp parallel
#pragma omp single
  {
    try {
      fn();
    } catch (...) {
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Run two callables, as sibling tasks when `concurrent` is set. Exceptions
/// thrown by either are rethrown on the calling thread after both finish.
template <class A, class B>
void run_pair(bool concurrent, A&& first, B&& second) {
  if (!concurrent) {
    first();
    second();
    return;
  }
  std::exception_ptr e1, e2;
  with_task_region([&] {
#pragma omp task shared(e1, first)
    {
      try {
        first();
      } catch (...) {
        e1 = std::current_exception();
      }
    }
    try {
      second();
    } catch (...) {
      e2 = std::current_exception();
    }
#pragma omp taskwait
  });
  if (e1) std::rethrow_exception(e1);
  if (e2) std::rethrow_exception(e2);
}

}  // namespace leu::parallel
