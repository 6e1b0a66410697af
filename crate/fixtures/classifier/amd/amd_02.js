define('app/config', [], function() {
  return { debug: true };
});
