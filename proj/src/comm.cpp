// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/comm.hpp"

#include <condition_variable>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

namespace plexus
{

namespace
{

// State shared by the threads of one RunRanks call.
class Hub
{
public:
  explicit Hub(int size)
    : size_(size), mailbox_(size, std::vector<std::vector<std::byte>>(size))
  {
  }

  int Size() const { return size_; }

  void Barrier()
  {
    std::unique_lock lock(mutex_);
    if (aborted_)
    {
      throw CommAborted();
    }
    const auto generation = generation_;
    if (++waiting_ == size_)
    {
      waiting_ = 0;
      ++generation_;
      cv_.notify_all();
      return;
    }
    cv_.wait(lock, [&] { return aborted_ || generation_ != generation; });
    if (generation_ == generation)
    {
      throw CommAborted();
    }
  }

  void Abort()
  {
    std::lock_guard lock(mutex_);
    aborted_ = true;
    cv_.notify_all();
  }

  // mailbox_[source][destination]; each slot is written by its source only between
  // barriers and read by its destination only after the next barrier.
  std::vector<std::byte> &Slot(int source, int destination)
  {
    return mailbox_[source][destination];
  }

private:
  int size_;
  std::vector<std::vector<std::vector<std::byte>>> mailbox_;
  std::mutex mutex_;
  std::condition_variable cv_;
  int waiting_ = 0;
  unsigned long generation_ = 0;
  bool aborted_ = false;
};

class ThreadCommunicator final : public Communicator
{
public:
  ThreadCommunicator(Hub &hub, int rank) : hub_(hub), rank_(rank) {}

  int Rank() const override { return rank_; }
  int Size() const override { return hub_.Size(); }

  std::vector<std::vector<std::byte>> Exchange(std::vector<std::vector<std::byte>> send) override
  {
    const int size = Size();
    Require(static_cast<int>(send.size()) == size, "exchange needs {} buffers, got {}", size,
            send.size());
    for (int r = 0; r < size; ++r)
    {
      hub_.Slot(rank_, r) = std::move(send[r]);
    }
    hub_.Barrier();
    std::vector<std::vector<std::byte>> received(size);
    for (int r = 0; r < size; ++r)
    {
      received[r] = std::move(hub_.Slot(r, rank_));
    }
    hub_.Barrier();
    return received;
  }

  void Barrier() override { hub_.Barrier(); }

private:
  Hub &hub_;
  int rank_;
};

}  // namespace

void RunRanks(int size, const std::function<void(Communicator &)> &body)
{
  Require(size >= 1, "rank count must be positive, got {}", size);
  Hub hub(size);
  if (size == 1)
  {
    ThreadCommunicator comm(hub, 0);
    body(comm);
    return;
  }

  std::vector<std::exception_ptr> errors(size);
  std::vector<char> primary(size, 0);
  {
    std::vector<std::jthread> threads;
    threads.reserve(size);
    for (int r = 0; r < size; ++r)
    {
      threads.emplace_back([&, r] {
        ThreadCommunicator comm(hub, r);
        try
        {
          body(comm);
        }
        catch (const CommAborted &)
        {
          errors[r] = std::current_exception();
        }
        catch (...)
        {
          errors[r] = std::current_exception();
          primary[r] = 1;
          hub.Abort();
        }
      });
    }
  }
  for (int r = 0; r < size; ++r)
  {
    if (primary[r])
    {
      std::rethrow_exception(errors[r]);
    }
  }
  for (int r = 0; r < size; ++r)
  {
    if (errors[r])
    {
      std::rethrow_exception(errors[r]);
    }
  }
}

}  // namespace plexus
