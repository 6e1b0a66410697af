exports.debug = function() {
  if (!exports.verbose) return;
  console.log.apply(console, arguments);
};

exports.assert = function(statement, err, log) {
  if (statement) return;
  throw new Error(err);
};

exports.verbose = false;
