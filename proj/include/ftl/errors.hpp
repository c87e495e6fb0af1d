#pragma once

#include <stdexcept>
#include <string>

namespace ftl {

// Base class for every error raised by the toolkit.
class error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// Input exceeds a configured memory or size budget.
class capacity_error : public error
{
public:
	using error::error;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public error
{
public:
	using error::error;
};

// Request reaches past the end of a precomputed table.
class bound_error : public error
{
public:
	using error::error;
};

// Evaluation requested at a pole.
class pole_error : public error
{
public:
	using error::error;
};

// A series cannot reach the requested accuracy (or does not converge at all).
class convergence_error : public error
{
public:
	using error::error;
};

// Adaptive quadrature ran out of panels.
class budget_exceeded : public error
{
public:
	using error::error;
};

}  // namespace ftl
