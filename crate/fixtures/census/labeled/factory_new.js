function Timer(ms) {
  return { ms: ms, started: Date.now() };
}
Timer.start = function(ms) {
  return new Timer(ms);
};
module.exports = Timer;
