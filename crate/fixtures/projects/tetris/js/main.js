require(['game'], function(Game) {
  console.log(new Game().describe());
});
